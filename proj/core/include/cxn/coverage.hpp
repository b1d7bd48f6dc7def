#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cxn/conllu.hpp"
#include "cxn/lexicon.hpp"
#include "cxn/topic.hpp"

namespace cxn {

struct FreqEntry {
  std::string lemma;  // normalized as for lexicon lookups
  Pos pos = Pos::Noun;
  std::uint64_t freq = 0;

  bool operator==(const FreqEntry&) const = default;
};

/// Noun/verb lemma frequencies over all sentences, keeping entries with
/// freq > min_freq, sorted by descending frequency then lemma. Tokens count
/// when their UPOS is NOUN or VERB and that class is in `pos_set`.
std::vector<FreqEntry> frequency_list(std::span<const conllu::Sentence> sentences,
                                      const std::set<Pos>& pos_set, std::uint64_t min_freq);

struct CoverageCount {
  std::uint64_t lemmas = 0;
  std::uint64_t forms = 0;  // summed lemma frequencies

  bool operator==(const CoverageCount&) const = default;
};

/// Lemmas and forms grouped by how many distinct topics the lemma has.
struct TopicCountTable {
  std::map<std::size_t, CoverageCount> buckets;
  CoverageCount total;

  bool operator==(const TopicCountTable&) const = default;
};

struct CoverageReport {
  std::uint64_t threshold = 0;
  std::map<Topic, CoverageCount> per_topic;
  std::map<Pos, TopicCountTable> per_pos;
  TopicCountTable overall;

  /// k = 0 bucket of one word class.
  CoverageCount untagged(Pos pos) const;
  std::size_t max_topic_count() const;

  bool operator==(const CoverageReport&) const = default;
};

CoverageReport coverage_report(std::span<const FreqEntry> freq, const Lexicon& lexicon,
                               std::uint64_t threshold = 5);

/// count / total as a percentage rounded to one decimal ("10.1"); "0.0" when
/// total is zero.
std::string percent(std::uint64_t count, std::uint64_t total);

enum class ReportFormat { Table, Tsv, Json };
std::optional<ReportFormat> report_format_from_string(std::string_view name);

std::string render_report(const CoverageReport& report, ReportFormat format);

/// Reads back the TSV rendering. Throws cxn::FormatError on malformed input.
CoverageReport parse_report_tsv(std::string_view text);

}  // namespace cxn
