#pragma once

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cxn/topic.hpp"

namespace cxn {

struct SynsetId {
  std::string value;

  auto operator<=>(const SynsetId&) const = default;
};

/// Lemma key used by every lexicon lookup: NFC, lowercased, '_' read as ' '.
std::string normalize_lemma(std::string_view lemma);

/// Relation names whose edges are stored in both directions at load time.
bool is_symmetric_relation(std::string_view name);

struct LexiconStats {
  std::size_t senses = 0;     // distinct (lemma, pos, synset) triples
  std::size_t synsets = 0;
  std::size_t relations = 0;  // stored directed edges, after closure

  bool operator==(const LexiconStats&) const = default;
};

/// Lemma/POS to synsets, synset to topic, and typed synset relations.
/// Immutable once built; lookups are safe from any number of threads.
class Lexicon {
 public:
  Lexicon() = default;

  /// Reads the sense TSV and optional relation TSV. Throws cxn::FormatError
  /// with a line number on malformed rows, unknown topics, or relations that
  /// name unknown synsets, and on an empty sense table.
  static Lexicon load(const std::string& sense_path,
                      const std::optional<std::string>& relation_path = std::nullopt);
  static Lexicon load(std::istream& senses, std::istream* relations = nullptr);

  const std::set<SynsetId>& synsets_of(std::string_view lemma, Pos pos) const;
  std::set<Topic> topics_of(std::string_view lemma, Pos pos) const;
  const Topic* topic(const SynsetId& synset) const;
  const std::set<SynsetId>& related(const SynsetId& synset, std::string_view relation) const;

  /// True iff some sense of lemma1 is linked by `relation` to some sense of
  /// lemma2.
  bool has_relation(std::string_view lemma1, Pos pos1, std::string_view relation,
                    std::string_view lemma2, Pos pos2) const;

  const LexiconStats& stats() const noexcept { return stats_; }
  bool empty() const noexcept { return topics_.empty(); }

  bool operator==(const Lexicon&) const = default;

 private:
  std::map<std::pair<std::string, Pos>, std::set<SynsetId>> senses_;
  std::map<SynsetId, Topic> topics_;
  std::map<std::pair<SynsetId, std::string>, std::set<SynsetId>> relations_;
  LexiconStats stats_;
};

/// Inputs for turning an OMW tab distribution into the sense/relation TSVs.
struct OmwSources {
  std::vector<std::string> omw_tab;       // e.g. wn-data-ita.tab
  std::string lexnames;                   // Princeton "lexnames" index
  std::vector<std::string> wordnet_data;  // Princeton data.noun / data.verb
};

struct OmwConversion {
  std::size_t senses = 0;
  std::size_t relations = 0;
  std::size_t skipped_lemmas = 0;  // OMW lemma rows without a noun/verb topic
};

/// Best-effort converter. Synset ids are written as "<offset>-<pos>".
/// Antonym ('!'), similar ('&'), derivation ('+') and also-see ('^') pointers
/// from the data files become relation rows when both ends have senses.
OmwConversion convert_omw(const OmwSources& sources, std::ostream& senses_out,
                          std::ostream& relations_out);

}  // namespace cxn
