#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cxn/compiler.hpp"
#include "cxn/conllu.hpp"
#include "cxn/lexicon.hpp"
#include "cxn/topic.hpp"

namespace cxn {

enum class MissingLemmaPolicy { Fail, Pass };

struct MatchOptions {
  bool semantic_filtering = true;
  /// Outcome of an OntoClass test on a lemma with no synsets.
  MissingLemmaPolicy missing_lemma = MissingLemmaPolicy::Fail;
  bool identity_case_fold = false;
};

struct Match {
  std::size_t sentence = 0;
  /// Token id per pattern node, in node order; 0 marks an omitted optional node.
  std::vector<int> assignment;

  bool assigned(std::size_t node) const { return assignment[node] != 0; }
  std::vector<std::size_t> omitted() const;

  auto operator<=>(const Match&) const = default;
};

/// All maximal matches of `pattern` in one sentence, ordered by the token of
/// the internal-root node and then by assignment. Lexicon-backed checks
/// (OntoClass, IDENTITY relations) run only with semantic filtering on.
std::vector<Match> match_sentence(const Pattern& pattern, const conllu::Sentence& sentence,
                                  const Lexicon& lexicon, const MatchOptions& options = {},
                                  std::size_t sentence_index = 0);

/// Per-sentence results concatenated in document order. With jobs > 1 the
/// sentences are split across worker threads; the output order is unchanged.
std::vector<Match> match_corpus(const Pattern& pattern,
                                std::span<const conllu::Sentence> sentences,
                                const Lexicon& lexicon, const MatchOptions& options = {},
                                unsigned jobs = 1);

/// Key of the MISC item that records construct annotations.
inline constexpr std::string_view kCxnMiscKey = "Cxn";

/// Copy of `sentence` where every assigned token gains "Cxn=<id>:<occ>:<row>"
/// (comma-appended to existing values). Throws cxn::Error if the sentence
/// already holds occurrence `occurrence` of `cxn_id`.
conllu::Sentence annotate(const conllu::Sentence& sentence, const Match& match,
                          const Pattern& pattern, std::string_view cxn_id, int occurrence);

/// Annotations of `cxn_id` found in a sentence: occurrence -> (row id -> token id).
std::map<int, std::map<std::string, int>> read_annotations(const conllu::Sentence& sentence,
                                                           std::string_view cxn_id);

/// One past the highest occurrence of `cxn_id` in the sentence (1 if none).
int next_occurrence(const conllu::Sentence& sentence, std::string_view cxn_id);

}  // namespace cxn
