#include "cxn/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <istream>

#include "cxn/error.hpp"
#include "cxn/text.hpp"

namespace cxn {

std::string normalize_lemma(std::string_view lemma) {
  auto out = nfc_lower(trim(lemma));
  std::replace(out.begin(), out.end(), '_', ' ');
  return out;
}

bool is_symmetric_relation(std::string_view name) {
  return name == "antonym" || name == "similar";
}

namespace {

const std::set<SynsetId> kNoSynsets;

// Yields (line number, tab-split fields) for non-blank, non-comment rows.
template <typename Fn>
void for_each_row(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || line.front() == '#') continue;
    if (!is_valid_utf8(line)) throw FormatError("invalid UTF-8", lineno);
    fn(lineno, split(line, '\t'));
  }
}

}  // namespace

Lexicon Lexicon::load(std::istream& senses, std::istream* relations) {
  Lexicon lex;
  std::set<std::tuple<std::string, Pos, SynsetId>> triples;

  for_each_row(senses, [&](std::size_t lineno, const std::vector<std::string>& f) {
    if (f.size() != 4) throw FormatError("sense row needs 4 fields", lineno);
    const auto lemma = normalize_lemma(f[0]);
    const auto pos = pos_from_tag(f[1]);
    if (lemma.empty()) throw FormatError("empty lemma", lineno);
    if (!pos) throw FormatError("unknown pos '" + f[1] + "'", lineno);
    if (f[2].empty()) throw FormatError("empty synset id", lineno);
    const auto topic = Topic::try_parse(f[3]);
    if (!topic) throw FormatError("unknown topic '" + f[3] + "'", lineno);
    if (topic->pos() != *pos)
      throw FormatError("topic " + topic->str() + " does not match pos " + f[1], lineno);

    SynsetId id{f[2]};
    auto [it, inserted] = lex.topics_.emplace(id, *topic);
    if (!inserted && !(it->second == *topic))
      throw FormatError("synset " + id.value + " has two topics", lineno);
    lex.senses_[{lemma, *pos}].insert(id);
    triples.emplace(lemma, *pos, std::move(id));
  });
  if (lex.topics_.empty()) throw FormatError("empty lexicon");

  if (relations) {
    for_each_row(*relations, [&](std::size_t lineno, const std::vector<std::string>& f) {
      if (f.size() != 3) throw FormatError("relation row needs 3 fields", lineno);
      SynsetId from{f[0]};
      SynsetId to{f[2]};
      const auto& name = f[1];
      if (name.empty()) throw FormatError("empty relation name", lineno);
      for (const auto* id : {&from, &to}) {
        if (!lex.topics_.contains(*id))
          throw FormatError("relation references unknown synset " + id->value, lineno);
      }
      lex.relations_[{from, name}].insert(to);
      if (is_symmetric_relation(name)) lex.relations_[{to, name}].insert(from);
    });
  }

  lex.stats_.senses = triples.size();
  lex.stats_.synsets = lex.topics_.size();
  for (const auto& [_, targets] : lex.relations_) lex.stats_.relations += targets.size();
  return lex;
}

Lexicon Lexicon::load(const std::string& sense_path,
                      const std::optional<std::string>& relation_path) {
  std::ifstream senses(sense_path);
  if (!senses) throw Error("cannot open " + sense_path);
  if (!relation_path) return load(senses, nullptr);
  std::ifstream relations(*relation_path);
  if (!relations) throw Error("cannot open " + *relation_path);
  return load(senses, &relations);
}

const std::set<SynsetId>& Lexicon::synsets_of(std::string_view lemma, Pos pos) const {
  const auto it = senses_.find({normalize_lemma(lemma), pos});
  return it == senses_.end() ? kNoSynsets : it->second;
}

std::set<Topic> Lexicon::topics_of(std::string_view lemma, Pos pos) const {
  std::set<Topic> out;
  for (const auto& id : synsets_of(lemma, pos)) out.insert(topics_.at(id));
  return out;
}

const Topic* Lexicon::topic(const SynsetId& synset) const {
  const auto it = topics_.find(synset);
  return it == topics_.end() ? nullptr : &it->second;
}

const std::set<SynsetId>& Lexicon::related(const SynsetId& synset,
                                           std::string_view relation) const {
  const auto it = relations_.find({synset, std::string(relation)});
  return it == relations_.end() ? kNoSynsets : it->second;
}

bool Lexicon::has_relation(std::string_view lemma1, Pos pos1, std::string_view relation,
                           std::string_view lemma2, Pos pos2) const {
  const auto& targets = synsets_of(lemma2, pos2);
  if (targets.empty()) return false;
  for (const auto& s1 : synsets_of(lemma1, pos1)) {
    const auto& linked = related(s1, relation);
    for (const auto& s2 : targets)
      if (linked.contains(s2)) return true;
  }
  return false;
}

}  // namespace cxn
