#include "cxn/coverage.hpp"

#include <algorithm>
#include <charconv>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cxn/error.hpp"
#include "cxn/text.hpp"

namespace cxn {

std::vector<FreqEntry> frequency_list(std::span<const conllu::Sentence> sentences,
                                      const std::set<Pos>& pos_set, std::uint64_t min_freq) {
  std::map<std::pair<std::string, Pos>, std::uint64_t> counts;
  for (const auto& s : sentences) {
    for (const auto& t : s.tokens) {
      std::optional<Pos> pos;
      if (t.upos == "NOUN") pos = Pos::Noun;
      if (t.upos == "VERB") pos = Pos::Verb;
      if (!pos || !pos_set.contains(*pos) || t.lemma.empty()) continue;
      ++counts[{normalize_lemma(t.lemma), *pos}];
    }
  }
  std::vector<FreqEntry> out;
  for (const auto& [key, freq] : counts)
    if (freq > min_freq) out.push_back({key.first, key.second, freq});
  std::sort(out.begin(), out.end(), [](const FreqEntry& a, const FreqEntry& b) {
    if (a.freq != b.freq) return a.freq > b.freq;
    if (a.lemma != b.lemma) return a.lemma < b.lemma;
    return a.pos < b.pos;
  });
  return out;
}

CoverageCount CoverageReport::untagged(Pos pos) const {
  const auto it = per_pos.find(pos);
  if (it == per_pos.end()) return {};
  const auto b = it->second.buckets.find(0);
  return b == it->second.buckets.end() ? CoverageCount{} : b->second;
}

std::size_t CoverageReport::max_topic_count() const {
  return overall.buckets.empty() ? 0 : overall.buckets.rbegin()->first;
}

CoverageReport coverage_report(std::span<const FreqEntry> freq, const Lexicon& lexicon,
                               std::uint64_t threshold) {
  CoverageReport r;
  r.threshold = threshold;
  const auto add = [](CoverageCount& c, std::uint64_t f) {
    ++c.lemmas;
    c.forms += f;
  };
  for (const auto& e : freq) {
    const auto topics = lexicon.topics_of(e.lemma, e.pos);
    auto& table = r.per_pos[e.pos];
    add(table.buckets[topics.size()], e.freq);
    add(table.total, e.freq);
    add(r.overall.buckets[topics.size()], e.freq);
    add(r.overall.total, e.freq);
    for (const auto& t : topics) add(r.per_topic[t], e.freq);
  }
  return r;
}

std::string percent(std::uint64_t count, std::uint64_t total) {
  if (total == 0) return "0.0";
  // Tenths of a percent, rounded half up.
  const auto tenths = (count * 2000 + total) / (2 * total);
  return std::to_string(tenths / 10) + "." + std::to_string(tenths % 10);
}

std::optional<ReportFormat> report_format_from_string(std::string_view name) {
  if (name == "table") return ReportFormat::Table;
  if (name == "tsv") return ReportFormat::Tsv;
  if (name == "json") return ReportFormat::Json;
  return std::nullopt;
}

namespace {

constexpr std::string_view kTsvHeader = "section\tpos\tkey\tlemmas\tlemma_pct\tforms\tform_pct";

std::vector<std::pair<std::string, const TopicCountTable*>> table_rows(const CoverageReport& r) {
  std::vector<std::pair<std::string, const TopicCountTable*>> rows;
  for (const auto& [pos, table] : r.per_pos) rows.emplace_back(std::string(to_string(pos)), &table);
  if (!r.per_pos.empty()) rows.emplace_back("total", &r.overall);
  return rows;
}

// Topics in appendix order: nouns first, then by descending lemma count.
std::vector<std::pair<Topic, CoverageCount>> sorted_topics(const CoverageReport& r) {
  std::vector<std::pair<Topic, CoverageCount>> out(r.per_topic.begin(), r.per_topic.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first.pos() != b.first.pos()) return a.first.pos() < b.first.pos();
    return a.second.lemmas > b.second.lemmas;
  });
  return out;
}

std::string render_tsv(const CoverageReport& r) {
  std::ostringstream out;
  out << "# min_freq\t" << r.threshold << '\n' << kTsvHeader << '\n';
  for (const auto& [name, table] : table_rows(r)) {
    for (const auto& [k, c] : table->buckets) {
      out << "bucket\t" << name << '\t' << k << '\t' << c.lemmas << '\t'
          << percent(c.lemmas, table->total.lemmas) << '\t' << c.forms << '\t'
          << percent(c.forms, table->total.forms) << '\n';
    }
  }
  for (const auto& [topic, c] : sorted_topics(r)) {
    out << "topic\t" << to_string(topic.pos()) << '\t' << topic.str() << '\t' << c.lemmas
        << "\t-\t" << c.forms << "\t-\n";
  }
  return out.str();
}

std::string cell(std::uint64_t count, std::uint64_t total) {
  return std::to_string(count) + " (" + percent(count, total) + "%)";
}

void render_distribution(std::ostream& out, const CoverageReport& r, const char* title,
                         bool forms) {
  out << title << '\n';
  const auto max_k = r.max_topic_count();
  const bool any = !r.per_pos.empty();
  out << std::left << std::setw(8) << "POS";
  if (any)
    for (std::size_t k = 0; k <= max_k; ++k) out << std::setw(18) << k;
  out << "Total\n";
  for (const auto& [name, table] : table_rows(r)) {
    const auto total = forms ? table->total.forms : table->total.lemmas;
    out << std::setw(8) << name;
    for (std::size_t k = 0; k <= max_k; ++k) {
      const auto it = table->buckets.find(k);
      const auto c = it == table->buckets.end() ? CoverageCount{} : it->second;
      out << std::setw(18) << cell(forms ? c.forms : c.lemmas, total);
    }
    out << cell(total, total) << '\n';
  }
}

std::string render_table(const CoverageReport& r) {
  std::ostringstream out;
  render_distribution(out, r, "Lemmas by number of topics", false);
  out << '\n';
  render_distribution(out, r, "Forms by number of topics", true);
  out << '\n' << std::left << std::setw(22) << "class" << std::setw(12) << "n. lemmas"
      << "n. forms\n";
  for (const auto& [topic, c] : sorted_topics(r))
    out << std::setw(22) << topic.str() << std::setw(12) << c.lemmas << c.forms << '\n';
  return out.str();
}

std::string render_json(const CoverageReport& r) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["min_freq"] = r.threshold;
  const auto table_json = [](const TopicCountTable& t) {
    ordered_json buckets = ordered_json::array();
    for (const auto& [k, c] : t.buckets) {
      buckets.push_back({{"topics", k},
                         {"lemmas", c.lemmas},
                         {"lemma_pct", percent(c.lemmas, t.total.lemmas)},
                         {"forms", c.forms},
                         {"form_pct", percent(c.forms, t.total.forms)}});
    }
    return ordered_json{{"lemmas", t.total.lemmas}, {"forms", t.total.forms}, {"buckets", buckets}};
  };
  j["by_topic_count"] = ordered_json::object();
  for (const auto& [name, table] : table_rows(r)) j["by_topic_count"][name] = table_json(*table);
  j["per_topic"] = ordered_json::array();
  for (const auto& [topic, c] : sorted_topics(r))
    j["per_topic"].push_back({{"topic", topic.str()}, {"lemmas", c.lemmas}, {"forms", c.forms}});
  return j.dump(2) + "\n";
}

std::uint64_t to_u64(const std::string& text, std::size_t line) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw FormatError("expected a non-negative integer, got '" + text + "'", line);
  return v;
}

}  // namespace

std::string render_report(const CoverageReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::Table: return render_table(report);
    case ReportFormat::Tsv: return render_tsv(report);
    case ReportFormat::Json: return render_json(report);
  }
  throw Error("unknown report format");
}

CoverageReport parse_report_tsv(std::string_view text) {
  CoverageReport r;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == kTsvHeader) continue;
    const auto f = split(line, '\t');
    if (f[0] == "# min_freq" && f.size() == 2) {
      r.threshold = to_u64(f[1], lineno);
      continue;
    }
    if (f.size() != 7) throw FormatError("expected 7 columns", lineno);
    const CoverageCount c{to_u64(f[3], lineno), to_u64(f[5], lineno)};
    if (f[0] == "bucket") {
      const auto k = static_cast<std::size_t>(to_u64(f[2], lineno));
      TopicCountTable* table = nullptr;
      if (f[1] == "total") {
        table = &r.overall;
      } else if (auto pos = pos_from_tag(f[1])) {
        table = &r.per_pos[*pos];
      } else {
        throw FormatError("unknown pos '" + f[1] + "'", lineno);
      }
      table->buckets[k] = c;
      table->total.lemmas += c.lemmas;
      table->total.forms += c.forms;
    } else if (f[0] == "topic") {
      const auto topic = Topic::try_parse(f[2]);
      if (!topic) throw FormatError("unknown topic '" + f[2] + "'", lineno);
      r.per_topic.emplace(*topic, c);
    } else {
      throw FormatError("unknown section '" + f[0] + "'", lineno);
    }
  }
  return r;
}

}  // namespace cxn
