#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "cxn/error.hpp"
#include "cxn/lexicon.hpp"
#include "cxn/text.hpp"

namespace cxn {

namespace {

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return in;
}

// "00\tadj.all\t3" -> {0: "adj.all"}
std::map<int, std::string> read_lexnames(const std::string& path) {
  auto in = open(path);
  std::map<int, std::string> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto f = split_ws(line);
    if (f.empty()) continue;
    if (f.size() < 2) throw FormatError("malformed lexnames row", lineno);
    int num = 0;
    const auto [_, ec] = std::from_chars(f[0].data(), f[0].data() + f[0].size(), num);
    if (ec != std::errc()) throw FormatError("malformed lexnames row", lineno);
    out[num] = f[1];
  }
  return out;
}

std::string synset_key(std::string_view offset, std::string_view pos) {
  return std::string(offset) + "-" + std::string(pos);
}

struct DataSynset {
  std::string topic;
  std::vector<std::pair<std::string, std::string>> pointers;  // (relation, target)
};

std::string_view pointer_relation(std::string_view symbol) {
  if (symbol == "!") return "antonym";
  if (symbol == "&") return "similar";
  if (symbol == "+") return "derivation";
  if (symbol == "^") return "also_see";
  return {};
}

// Princeton data.* line:
// offset lex_filenum ss_type w_cnt(hex) {word lex_id} p_cnt {sym offset pos src/tgt} ...
void read_data_file(const std::string& path, const std::map<int, std::string>& lexnames,
                    std::map<std::string, DataSynset>& out) {
  auto in = open(path);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line.front() == ' ') continue;  // license header
    const auto bar = line.find(" | ");
    const auto f = split_ws(std::string_view(line).substr(0, bar));
    if (f.size() < 4) continue;
    auto pos = f[2] == "s" ? std::string("a") : f[2];
    int lexfile = 0;
    std::from_chars(f[1].data(), f[1].data() + f[1].size(), lexfile);
    std::size_t words = 0;
    std::from_chars(f[3].data(), f[3].data() + f[3].size(), words, 16);
    std::size_t i = 4 + 2 * words;
    if (i >= f.size()) throw FormatError("truncated synset in " + path, lineno);
    std::size_t pointers = 0;
    std::from_chars(f[i].data(), f[i].data() + f[i].size(), pointers);
    ++i;
    DataSynset syn;
    if (const auto it = lexnames.find(lexfile); it != lexnames.end()) syn.topic = it->second;
    for (std::size_t p = 0; p < pointers && i + 3 < f.size(); ++p, i += 4) {
      const auto rel = pointer_relation(f[i]);
      if (rel.empty()) continue;
      const auto& tpos = f[i + 2] == "s" ? std::string("a") : f[i + 2];
      syn.pointers.emplace_back(std::string(rel), synset_key(f[i + 1], tpos));
    }
    out[synset_key(f[0], pos)] = std::move(syn);
  }
}

}  // namespace

OmwConversion convert_omw(const OmwSources& sources, std::ostream& senses_out,
                          std::ostream& relations_out) {
  const auto lexnames = read_lexnames(sources.lexnames);
  std::map<std::string, DataSynset> synsets;
  for (const auto& path : sources.wordnet_data) read_data_file(path, lexnames, synsets);

  OmwConversion result;
  std::set<std::tuple<std::string, std::string, std::string>> sense_rows;
  std::set<std::string> used;
  for (const auto& path : sources.omw_tab) {
    auto in = open(path);
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line.front() == '#') continue;
      const auto f = split(line, '\t');
      if (f.size() < 3) continue;
      const auto& type = f[1];
      if (type != "lemma" && !(type.size() > 6 && type.ends_with(":lemma"))) continue;
      const auto dash = f[0].rfind('-');
      if (dash == std::string::npos) continue;
      const auto pos = f[0].substr(dash + 1);
      const auto it = synsets.find(f[0]);
      if ((pos != "n" && pos != "v") || it == synsets.end() ||
          !Topic::try_parse(it->second.topic)) {
        ++result.skipped_lemmas;
        continue;
      }
      auto lemma = std::string(trim(f[2]));
      std::replace(lemma.begin(), lemma.end(), '_', ' ');
      sense_rows.emplace(lemma, pos, f[0]);
      used.insert(f[0]);
    }
  }
  for (const auto& [lemma, pos, id] : sense_rows)
    senses_out << lemma << '\t' << pos << '\t' << id << '\t' << synsets.at(id).topic << '\n';
  result.senses = sense_rows.size();

  for (const auto& id : used) {
    for (const auto& [rel, target] : synsets.at(id).pointers) {
      if (!used.contains(target)) continue;
      relations_out << id << '\t' << rel << '\t' << target << '\n';
      ++result.relations;
    }
  }
  return result;
}

}  // namespace cxn
