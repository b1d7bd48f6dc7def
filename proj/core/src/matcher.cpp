#include "cxn/matcher.hpp"

#include <algorithm>
#include <charconv>
#include <thread>

#include "cxn/error.hpp"
#include "cxn/text.hpp"

namespace cxn {

using conllc::FieldRef;
using conllc::WithoutConstraint;
using conllu::Sentence;
using conllu::Token;

std::vector<std::size_t> Match::omitted() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignment.size(); ++i)
    if (!assignment[i]) out.push_back(i);
  return out;
}

namespace {

const std::string* field_value(const Token& t, const FieldRef& field) {
  switch (field.kind) {
    case FieldRef::Kind::Form: return &t.form;
    case FieldRef::Kind::Lemma: return &t.lemma;
    case FieldRef::Kind::Upos: return &t.upos;
    case FieldRef::Kind::Deprel: return &t.deprel;
    case FieldRef::Kind::Feature: {
      const auto it = t.feats.find(field.feature);
      return it == t.feats.end() ? nullptr : &it->second;
    }
  }
  return nullptr;
}

bool field_is(const Token& t, const FieldRef& field, const std::string& value) {
  const auto* v = field_value(t, field);
  return v && *v == value;
}

class SentenceMatcher {
 public:
  SentenceMatcher(const Pattern& p, const Sentence& s, const Lexicon& lex,
                  const MatchOptions& opts)
      : p_(p), s_(s), lex_(lex), opts_(opts), assignment_(p.nodes.size(), 0),
        used_(s.tokens.size() + 1, false) {
    candidates_.resize(p.nodes.size());
    for (std::size_t i = 0; i < p.nodes.size(); ++i)
      for (const auto& t : s.tokens)
        if (local_ok(p.nodes[i], t)) candidates_[i].push_back(t.id);
  }

  std::vector<std::vector<int>> run() {
    search(0, 0);
    return std::move(found_);
  }

 private:
  bool local_ok(const NodeConstraint& n, const Token& t) const {
    if (n.form && t.form != *n.form) return false;
    if (n.lemma && t.lemma != *n.lemma) return false;
    if (n.upos && t.upos != *n.upos) return false;
    for (const auto& [k, v] : n.feats) {
      const auto it = t.feats.find(k);
      if (it == t.feats.end() || it->second != v) return false;
    }
    for (const auto& w : n.without) {
      if (w.scope == WithoutConstraint::Scope::Self) {
        if (field_is(t, w.field, w.value)) return false;
      } else {
        for (const auto& child : s_.tokens)
          if (child.head == t.id && field_is(child, w.field, w.value)) return false;
      }
    }
    if (n.onto_class && opts_.semantic_filtering) {
      const auto& synsets = lex_.synsets_of(t.lemma, n.onto_class->pos());
      if (synsets.empty()) return opts_.missing_lemma == MissingLemmaPolicy::Pass;
      const auto topics = lex_.topics_of(t.lemma, n.onto_class->pos());
      if (!topics.contains(*n.onto_class)) return false;
    }
    return true;
  }

  const Token& token(int id) const { return s_.tokens[static_cast<std::size_t>(id - 1)]; }

  bool identity_ok(const IdentityLink& link, const Token& self, const Token& other) const {
    if (link.relation) {
      if (!opts_.semantic_filtering) return true;
      const auto p1 = pos_from_upos(self.upos);
      const auto p2 = pos_from_upos(other.upos);
      return p1 && p2 && lex_.has_relation(self.lemma, *p1, *link.relation, other.lemma, *p2);
    }
    const auto* a = field_value(self, link.field);
    const auto* b = field_value(other, link.field);
    if (!a || !b || a->empty() || b->empty()) return false;
    if (opts_.identity_case_fold) return nfc_lower(*a) == nfc_lower(*b);
    return nfc(*a) == nfc(*b);
  }

  // Constraints between node i (just decided) and every earlier node.
  bool pair_ok(std::size_t i) const {
    for (const auto& e : p_.edges) {
      if (e.head > i || e.dependent > i || (e.head != i && e.dependent != i)) continue;
      const int dep = assignment_[e.dependent];
      if (!dep) continue;
      const int head = assignment_[e.head];
      if (!head) return false;
      const auto& t = token(dep);
      if (t.head != head) return false;
      if (e.deprel && t.deprel != *e.deprel) return false;
    }
    for (std::size_t j = 0; j <= i; ++j) {
      for (const auto& link : p_.nodes[j].identity) {
        const auto k = link.target;
        if (k > i || (j != i && k != i)) continue;
        if (!assignment_[j] || !assignment_[k]) continue;
        if (!identity_ok(link, token(assignment_[j]), token(assignment_[k]))) return false;
      }
    }
    return true;
  }

  void search(std::size_t i, int last) {
    if (i == p_.nodes.size()) {
      found_.push_back(assignment_);
      return;
    }
    const auto& node = p_.nodes[i];
    if (!node.required && pair_ok(i)) search(i + 1, last);
    for (int id : candidates_[i]) {
      if (used_[static_cast<std::size_t>(id)]) continue;
      if (last) {
        if (id <= last) continue;
        if (node.adjacency == conllc::Adjacency::Strict && id != last + 1) continue;
      }
      assignment_[i] = id;
      used_[static_cast<std::size_t>(id)] = true;
      if (pair_ok(i)) search(i + 1, id);
      used_[static_cast<std::size_t>(id)] = false;
      assignment_[i] = 0;
    }
  }

  const Pattern& p_;
  const Sentence& s_;
  const Lexicon& lex_;
  const MatchOptions& opts_;
  std::vector<std::vector<int>> candidates_;
  std::vector<int> assignment_;
  std::vector<bool> used_;
  std::vector<std::vector<int>> found_;
};

// a extends b: agrees wherever b assigns and assigns strictly more.
bool strictly_extends(const std::vector<int>& a, const std::vector<int>& b) {
  bool more = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (b[i] && a[i] != b[i]) return false;
    if (!b[i] && a[i]) more = true;
  }
  return more;
}

struct CxnValue {
  std::string cxn_id;
  int occurrence = 0;
  std::string row;
};

std::optional<CxnValue> parse_cxn_value(std::string_view text) {
  const auto last = text.rfind(':');
  if (last == std::string_view::npos || last == 0) return std::nullopt;
  const auto mid = text.rfind(':', last - 1);
  if (mid == std::string_view::npos) return std::nullopt;
  CxnValue v;
  v.cxn_id = std::string(text.substr(0, mid));
  v.row = std::string(text.substr(last + 1));
  const auto occ = text.substr(mid + 1, last - mid - 1);
  const auto [ptr, ec] = std::from_chars(occ.data(), occ.data() + occ.size(), v.occurrence);
  if (ec != std::errc() || ptr != occ.data() + occ.size()) return std::nullopt;
  return v;
}

template <typename Fn>
void for_each_cxn_value(const Sentence& s, Fn&& fn) {
  for (const auto& t : s.tokens) {
    const auto* value = t.misc_value(kCxnMiscKey);
    if (!value) continue;
    for (const auto& piece : split(*value, ','))
      if (auto v = parse_cxn_value(piece)) fn(t, *v);
  }
}

}  // namespace

std::vector<Match> match_sentence(const Pattern& pattern, const Sentence& sentence,
                                  const Lexicon& lexicon, const MatchOptions& options,
                                  std::size_t sentence_index) {
  auto found = SentenceMatcher(pattern, sentence, lexicon, options).run();

  std::vector<Match> out;
  for (std::size_t i = 0; i < found.size(); ++i) {
    const bool dominated = std::any_of(found.begin(), found.end(), [&](const auto& other) {
      return strictly_extends(other, found[i]);
    });
    if (!dominated) out.push_back({sentence_index, std::move(found[i])});
  }
  const auto root = pattern.root;
  std::sort(out.begin(), out.end(), [root](const Match& a, const Match& b) {
    if (a.assignment[root] != b.assignment[root])
      return a.assignment[root] < b.assignment[root];
    return a.assignment < b.assignment;
  });
  return out;
}

std::vector<Match> match_corpus(const Pattern& pattern, std::span<const Sentence> sentences,
                                const Lexicon& lexicon, const MatchOptions& options,
                                unsigned jobs) {
  std::vector<std::vector<Match>> per_sentence(sentences.size());
  const auto work = [&](std::size_t begin, std::size_t step) {
    for (std::size_t i = begin; i < sentences.size(); i += step)
      per_sentence[i] = match_sentence(pattern, sentences[i], lexicon, options, i);
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(sentences.size())));
  if (jobs <= 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> workers;
    for (unsigned j = 0; j < jobs; ++j) workers.emplace_back(work, j, jobs);
  }

  std::vector<Match> out;
  for (auto& matches : per_sentence)
    for (auto& m : matches) out.push_back(std::move(m));
  return out;
}

Sentence annotate(const Sentence& sentence, const Match& match, const Pattern& pattern,
                  std::string_view cxn_id, int occurrence) {
  if (occurrence < 1) throw Error("occurrence must be positive");
  if (match.assignment.size() != pattern.nodes.size())
    throw Error("match does not belong to this pattern");
  if (read_annotations(sentence, cxn_id).contains(occurrence))
    throw Error("occurrence " + std::to_string(occurrence) + " of construction " +
                std::string(cxn_id) + " already annotated");

  Sentence out = sentence;
  for (std::size_t i = 0; i < pattern.nodes.size(); ++i) {
    const int id = match.assignment[i];
    if (!id) continue;
    if (static_cast<std::size_t>(id) > out.tokens.size())
      throw Error("match refers to a token outside the sentence");
    auto& t = out.tokens[static_cast<std::size_t>(id - 1)];
    auto value = std::string(cxn_id) + ":" + std::to_string(occurrence) + ":" +
                 pattern.nodes[i].row_id;
    if (const auto* existing = t.misc_value(kCxnMiscKey)) value = *existing + "," + value;
    t.set_misc(kCxnMiscKey, std::move(value));
  }
  return out;
}

std::map<int, std::map<std::string, int>> read_annotations(const Sentence& sentence,
                                                           std::string_view cxn_id) {
  std::map<int, std::map<std::string, int>> out;
  for_each_cxn_value(sentence, [&](const Token& t, const CxnValue& v) {
    if (v.cxn_id == cxn_id) out[v.occurrence][v.row] = t.id;
  });
  return out;
}

int next_occurrence(const Sentence& sentence, std::string_view cxn_id) {
  const auto existing = read_annotations(sentence, cxn_id);
  return existing.empty() ? 1 : existing.rbegin()->first + 1;
}

}  // namespace cxn
