#include "cxn/compiler.hpp"

#include <algorithm>

#include "cxn/error.hpp"
#include "cxn/text.hpp"

namespace cxn {

using conllc::Adjacency;
using conllc::FieldRef;
using conllc::WithoutConstraint;

const PatternEdge* Pattern::edge_into(std::size_t node) const {
  for (const auto& e : edges)
    if (e.dependent == node) return &e;
  return nullptr;
}

Pattern compile(const conllc::CxnDef& def) {
  const auto diags = conllc::validate(def);
  if (conllc::has_errors(diags)) {
    std::vector<std::string> lines;
    for (const auto& d : diags)
      if (d.severity == conllc::Diagnostic::Severity::Error) lines.push_back(d.str());
    throw Error("construction " + def.cxn_id + " does not validate: " + join(lines, "; "));
  }

  Pattern p;
  p.cxn_id = def.cxn_id;
  p.root = def.root_index();
  const auto index_of = [&](const std::string& id) {
    for (std::size_t i = 0; i < def.rows.size(); ++i)
      if (def.rows[i].id == id) return i;
    throw Error("unresolved row " + id);
  };

  for (std::size_t i = 0; i < def.rows.size(); ++i) {
    const auto& r = def.rows[i];
    NodeConstraint n;
    n.row_id = r.id;
    n.form = r.ud_form;
    n.lemma = r.lemma;
    // UPOS on a lexically fixed row only describes it.
    if (!r.lemma && !r.ud_form) n.upos = r.upos;
    n.feats = r.feats;
    n.required = r.required;
    n.adjacency = r.adjacency;
    if (auto it = r.sem_feats.find("OntoClass"); it != r.sem_feats.end())
      n.onto_class = normalize_topic(it->second, r.upos.value_or(""));
    if (auto it = r.sem_feats.find("Aktionsart"); it != r.sem_feats.end())
      n.aktionsart = it->second;
    n.without = r.without;
    for (const auto& c : r.identity) n.identity.push_back({c.field, c.relation, index_of(c.target)});
    p.nodes.push_back(std::move(n));

    if (r.head.kind == conllc::HeadRef::Kind::Row)
      p.edges.push_back({index_of(r.head.row), i, r.deprel});
  }

  std::optional<std::size_t> prev;
  for (std::size_t i = 0; i < p.nodes.size(); ++i) {
    if (!p.nodes[i].required) continue;
    if (prev) p.order.push_back({*prev, i, p.nodes[i].adjacency});
    prev = i;
  }
  return p;
}

namespace {

std::string node_name(std::size_t index) { return "X" + std::to_string(index + 1); }

std::string attribute(const FieldRef& field, const std::string& value) {
  switch (field.kind) {
    case FieldRef::Kind::Form: return "form='" + value + "'";
    case FieldRef::Kind::Lemma: return "lemma='" + value + "'";
    case FieldRef::Kind::Upos: return "upos=" + value;
    case FieldRef::Kind::Feature: return field.feature + "=" + value;
    case FieldRef::Kind::Deprel: break;
  }
  return {};
}

}  // namespace

std::string emit_grew(const Pattern& p) {
  std::vector<std::string> clauses;
  for (std::size_t i = 0; i < p.nodes.size(); ++i) {
    const auto& n = p.nodes[i];
    if (!n.required) continue;
    std::vector<std::string> attrs;
    if (n.form) attrs.push_back("form='" + *n.form + "'");
    if (n.lemma) attrs.push_back("lemma='" + *n.lemma + "'");
    if (n.upos) attrs.push_back("upos=" + *n.upos);
    for (const auto& [k, v] : n.feats) attrs.push_back(k + "=" + v);
    clauses.push_back(node_name(i) + " [" + join(attrs, ", ") + "]");
  }
  for (const auto& link : p.order) {
    clauses.push_back(node_name(link.before) +
                      (link.adjacency == Adjacency::Strict ? " < " : " << ") +
                      node_name(link.after));
  }
  for (const auto& e : p.edges) {
    if (!p.nodes[e.head].required || !p.nodes[e.dependent].required) continue;
    clauses.push_back(node_name(e.head) + " -" + (e.deprel ? "[" + *e.deprel + "]" : "") +
                      "-> " + node_name(e.dependent));
  }

  std::string out = "pattern {" + join(clauses, "; ") + "}";

  auto fresh = p.nodes.size();
  std::vector<std::string> unexpressed;
  for (std::size_t i = 0; i < p.nodes.size(); ++i) {
    const auto& n = p.nodes[i];
    const auto self = node_name(i);
    if (!n.required) {
      unexpressed.push_back(self + " REQUIRED=0");
      continue;
    }
    for (const auto& w : n.without) {
      std::string block;
      if (w.scope == WithoutConstraint::Scope::Children) {
        const auto child = node_name(fresh++);
        if (w.field.kind == FieldRef::Kind::Deprel)
          block = self + " -[" + w.value + "]-> " + child;
        else
          block = self + " -> " + child + "; " + child + " [" + attribute(w.field, w.value) + "]";
      } else if (w.field.kind == FieldRef::Kind::Deprel) {
        block = node_name(fresh++) + " -[" + w.value + "]-> " + self;
      } else {
        block = self + " [" + attribute(w.field, w.value) + "]";
      }
      out += "\nwithout {" + block + "}";
    }
  }

  for (std::size_t i = 0; i < p.nodes.size(); ++i) {
    const auto& n = p.nodes[i];
    const auto self = node_name(i);
    if (n.onto_class) unexpressed.push_back(self + " OntoClass=" + n.onto_class->str());
    if (n.aktionsart) unexpressed.push_back(self + " Aktionsart=" + *n.aktionsart);
    for (const auto& c : n.identity) {
      unexpressed.push_back(self + " " + c.field.str() + "=" +
                            (c.relation ? *c.relation + ":" : "") + node_name(c.target));
    }
  }
  // Group by node index.
  std::stable_sort(unexpressed.begin(), unexpressed.end(), [](const auto& a, const auto& b) {
    const auto na = std::stoul(a.substr(1, a.find(' ') - 1));
    const auto nb = std::stoul(b.substr(1, b.find(' ') - 1));
    return na < nb;
  });
  if (!unexpressed.empty()) out += "\n% unexpressed: " + join(unexpressed, "; ");
  return out + "\n";
}

}  // namespace cxn
