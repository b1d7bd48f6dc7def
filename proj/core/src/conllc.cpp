#include "cxn/conllc.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "cxn/text.hpp"
#include "cxn/topic.hpp"

namespace cxn::conllc {

namespace {

constexpr std::string_view kColumns[] = {"ID",       "UD.FORM", "LEMMA",     "UPOS",
                                         "FEATS",    "HEAD",    "DEPREL",    "REQUIRED",
                                         "WITHOUT",  "SEM.FEATS", "ADJACENCY", "IDENTITY"};

Diagnostic error(std::string row, std::string column, std::string message) {
  return {Diagnostic::Severity::Error, std::move(row), std::move(column), std::move(message)};
}

Diagnostic warning(std::string row, std::string column, std::string message) {
  return {Diagnostic::Severity::Warning, std::move(row), std::move(column),
          std::move(message)};
}

bool valid_row_id(std::string_view id) {
  if (id.empty() || id == "_" || id == "0") return false;
  return id.find_first_of(" \t,:=|") == std::string_view::npos;
}

std::optional<std::string> cell(const std::string& text) {
  if (text == "_") return std::nullopt;
  return text;
}

std::map<std::string, std::string> parse_pairs(const std::string& text, const std::string& row,
                                               const char* column) {
  std::map<std::string, std::string> out;
  if (text == "_") return out;
  for (const auto& piece : split(text, '|')) {
    const auto eq = piece.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == piece.size())
      throw ParseError(error(row, column, "malformed key=value '" + piece + "'"));
    if (!out.emplace(piece.substr(0, eq), piece.substr(eq + 1)).second)
      throw ParseError(error(row, column, "duplicate key '" + piece.substr(0, eq) + "'"));
  }
  return out;
}

std::string render_pairs(const std::map<std::string, std::string>& pairs) {
  if (pairs.empty()) return "_";
  std::string out;
  for (const auto& [k, v] : pairs) {
    if (!out.empty()) out += '|';
    out += k + '=' + v;
  }
  return out;
}

WithoutConstraint parse_without(const std::string& text, const std::string& row) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq + 1 == text.size())
    throw ParseError(error(row, "WITHOUT", "expected FIELD=VALUE in '" + text + "'"));
  WithoutConstraint w;
  std::string_view lhs = std::string_view(text).substr(0, eq);
  w.value = text.substr(eq + 1);
  if (lhs.starts_with("CHILDREN:")) {
    w.scope = WithoutConstraint::Scope::Children;
    lhs.remove_prefix(9);
  } else if (lhs.starts_with("SELF:")) {
    lhs.remove_prefix(5);
  }
  try {
    w.field = FieldRef::parse(lhs);
  } catch (const Error& e) {
    throw ParseError(error(row, "WITHOUT", e.what()));
  }
  if (w.scope == WithoutConstraint::Scope::Children) {
    using K = FieldRef::Kind;
    const auto k = w.field.kind;
    if (k != K::Deprel && k != K::Upos && k != K::Lemma)
      throw ParseError(error(row, "WITHOUT",
                             "CHILDREN scope supports DEPREL, UPOS and LEMMA only"));
  }
  return w;
}

IdentityConstraint parse_identity(const std::string& text, const std::string& row) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq + 1 == text.size())
    throw ParseError(error(row, "IDENTITY", "expected FIELD=ROW in '" + text + "'"));
  IdentityConstraint c;
  try {
    c.field = FieldRef::parse(std::string_view(text).substr(0, eq));
  } catch (const Error& e) {
    throw ParseError(error(row, "IDENTITY", e.what()));
  }
  using K = FieldRef::Kind;
  if (c.field.kind == K::Upos || c.field.kind == K::Deprel)
    throw ParseError(error(row, "IDENTITY", "IDENTITY supports UD.FORM, LEMMA and FEATS:<name>"));
  const auto rhs = text.substr(eq + 1);
  if (const auto colon = rhs.find(':'); colon != std::string::npos) {
    c.relation = rhs.substr(0, colon);
    c.target = rhs.substr(colon + 1);
    if (c.relation->empty())
      throw ParseError(error(row, "IDENTITY", "empty relation name in '" + text + "'"));
    if (c.field.kind != K::Lemma)
      throw ParseError(error(row, "IDENTITY", "relations are only defined on LEMMA"));
  } else {
    c.target = rhs;
  }
  if (!valid_row_id(c.target))
    throw ParseError(error(row, "IDENTITY", "bad target row '" + c.target + "'"));
  return c;
}

template <typename T, typename Parse>
std::vector<T> parse_list(const std::string& text, const std::string& row, Parse&& parse_one) {
  std::vector<T> out;
  if (text == "_") return out;
  for (const auto& piece : split(text, ',')) out.push_back(parse_one(piece, row));
  return out;
}

template <typename T>
std::string render_list(const std::vector<T>& items) {
  if (items.empty()) return "_";
  std::vector<std::string> parts;
  for (const auto& item : items) parts.push_back(item.str());
  return join(parts, ",");
}

void fill_structure(CxnRow& r, const std::vector<std::string>& c) {
  r.id = c[0];
  if (!valid_row_id(r.id)) throw ParseError(error(r.id, "ID", "invalid row id '" + r.id + "'"));
  r.ud_form = cell(c[1]);
  r.lemma = cell(c[2]);
  r.upos = cell(c[3]);
  r.feats = parse_pairs(c[4], r.id, "FEATS");
  if (c[5] == "_") {
    r.head = {};
  } else if (c[5] == "0") {
    r.head = {HeadRef::Kind::InternalRoot, {}};
  } else if (valid_row_id(c[5])) {
    r.head = {HeadRef::Kind::Row, c[5]};
  } else {
    throw ParseError(error(r.id, "HEAD", "invalid head '" + c[5] + "'"));
  }
  r.deprel = cell(c[6]);
}

void fill_constraints(CxnRow& r, const std::vector<std::string>& c) {
  if (c[0] == "1" || c[0] == "_")
    r.required = true;
  else if (c[0] == "0")
    r.required = false;
  else
    throw ParseError(error(r.id, "REQUIRED", "expected 1, 0 or _, got '" + c[0] + "'"));
  r.without = parse_list<WithoutConstraint>(c[1], r.id, parse_without);
  r.sem_feats = parse_pairs(c[2], r.id, "SEM.FEATS");
  for (const auto& [k, _] : r.sem_feats) {
    if (k != "OntoClass" && k != "Aktionsart")
      throw ParseError(error(r.id, "SEM.FEATS", "unknown semantic feature '" + k + "'"));
  }
  if (c[3] == "_" || c[3] == "STRICT")
    r.adjacency = Adjacency::Strict;
  else if (c[3] == "FREE")
    r.adjacency = Adjacency::Free;
  else
    throw ParseError(error(r.id, "ADJACENCY", "expected STRICT, FREE or _, got '" + c[3] + "'"));
  r.identity = parse_list<IdentityConstraint>(c[4], r.id, parse_identity);
}

bool is_header(const std::vector<std::string>& fields) {
  return fields.front() == "ID" || fields.front() == "REQUIRED";
}

// Structural problems make a definition unusable; parse() refuses them.
std::vector<Diagnostic> structural_diagnostics(const CxnDef& def) {
  std::vector<Diagnostic> out;
  if (def.rows.empty()) {
    out.push_back(error("", "", "construction has no rows"));
    return out;
  }
  std::set<std::string> ids;
  for (const auto& r : def.rows) {
    if (!valid_row_id(r.id)) out.push_back(error(r.id, "ID", "invalid row id"));
    if (!ids.insert(r.id).second) out.push_back(error(r.id, "ID", "duplicate row id"));
  }

  std::size_t roots = 0;
  bool attached = false;
  for (const auto& r : def.rows) {
    if (r.head.kind == HeadRef::Kind::InternalRoot) ++roots;
    if (r.head.kind == HeadRef::Kind::Row) {
      attached = true;
      if (!ids.contains(r.head.row))
        out.push_back(error(r.id, "HEAD", "unresolved row reference '" + r.head.row + "'"));
      else if (r.head.row == r.id)
        out.push_back(error(r.id, "HEAD", "row is its own head"));
    }
    for (const auto& c : r.identity) {
      if (!ids.contains(c.target))
        out.push_back(error(r.id, "IDENTITY", "unresolved row reference '" + c.target + "'"));
      else if (c.target == r.id)
        out.push_back(error(r.id, "IDENTITY", "row refers to itself"));
      if (c.relation && c.field.kind != FieldRef::Kind::Lemma)
        out.push_back(error(r.id, "IDENTITY", "relations are only defined on LEMMA"));
    }
  }
  if (roots > 1) out.push_back(error("", "HEAD", "multiple internal-root rows (HEAD=0)"));
  if (roots == 0 && attached)
    out.push_back(error("", "HEAD", "no internal-root row (HEAD=0) although rows attach to heads"));

  // Cycle check: walk each row's head chain.
  for (const auto& r : def.rows) {
    const CxnRow* cur = &r;
    for (std::size_t steps = 0; cur && cur->head.kind == HeadRef::Kind::Row; ++steps) {
      if (steps > def.rows.size()) {
        out.push_back(error(r.id, "HEAD", "cyclic head references"));
        break;
      }
      cur = def.row(cur->head.row);
    }
  }
  return out;
}

}  // namespace

FieldRef FieldRef::parse(std::string_view text) {
  if (text == "UD.FORM") return {Kind::Form, {}};
  if (text == "LEMMA") return {Kind::Lemma, {}};
  if (text == "UPOS") return {Kind::Upos, {}};
  if (text == "DEPREL") return {Kind::Deprel, {}};
  if (text.starts_with("FEATS:") && text.size() > 6)
    return {Kind::Feature, std::string(text.substr(6))};
  throw Error("unknown field '" + std::string(text) + "'");
}

std::string FieldRef::str() const {
  switch (kind) {
    case Kind::Form: return "UD.FORM";
    case Kind::Lemma: return "LEMMA";
    case Kind::Upos: return "UPOS";
    case Kind::Deprel: return "DEPREL";
    case Kind::Feature: return "FEATS:" + feature;
  }
  return {};
}

std::string WithoutConstraint::str() const {
  return (scope == Scope::Children ? "CHILDREN:" : "") + field.str() + "=" + value;
}

std::string IdentityConstraint::str() const {
  return field.str() + "=" + (relation ? *relation + ":" : "") + target;
}

const CxnRow* CxnDef::row(std::string_view id) const {
  for (const auto& r : rows)
    if (r.id == id) return &r;
  return nullptr;
}

std::size_t CxnDef::root_index() const {
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i].head.kind == HeadRef::Kind::InternalRoot) return i;
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i].required) return i;
  return 0;
}

std::string Diagnostic::str() const {
  std::string out = severity == Severity::Error ? "error" : "warning";
  if (!row.empty()) out += " [row " + row + "]";
  if (!column.empty()) out += " [" + column + "]";
  return out + ": " + message;
}

ParseError::ParseError(Diagnostic d) : Error(d.str()), diag_(std::move(d)) {}

CxnDef parse(std::string_view text) {
  CxnDef def;
  std::vector<std::vector<std::string>> full;
  std::vector<std::vector<std::string>> left;
  std::vector<std::vector<std::string>> right;

  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto body = trim(line);
    if (body.empty()) continue;
    if (body.front() == '#') {
      const auto meta = trim(body.substr(1));
      const auto eq = meta.find('=');
      if (eq == std::string_view::npos) continue;
      const auto key = std::string(trim(meta.substr(0, eq)));
      const auto value = std::string(trim(meta.substr(eq + 1)));
      if (key == "cxn-id")
        def.cxn_id = value;
      else if (key == "cxn")
        def.name = value;
      else if (key == "function")
        def.function = value;
      else
        def.extra_metadata.emplace_back(key, value);
      continue;
    }
    auto fields = split_ws(body);
    if (is_header(fields)) continue;
    switch (fields.size()) {
      case 12: full.push_back(std::move(fields)); break;
      case 7: left.push_back(std::move(fields)); break;
      case 5: right.push_back(std::move(fields)); break;
      default:
        throw ParseError(error(fields.front(), "",
                               "expected 12 columns (or 7 + 5 in split layout), found " +
                                   std::to_string(fields.size())));
    }
  }

  if (!full.empty() && (!left.empty() || !right.empty()))
    throw ParseError(error("", "", "cannot mix 12-column rows with split-layout blocks"));
  if (left.size() != right.size())
    throw ParseError(error("", "", "split layout blocks have " + std::to_string(left.size()) +
                                       " and " + std::to_string(right.size()) + " rows"));
  for (std::size_t i = 0; i < left.size(); ++i) {
    auto& row = left[i];
    row.insert(row.end(), right[i].begin(), right[i].end());
    full.push_back(std::move(row));
  }

  for (const auto& fields : full) {
    CxnRow r;
    fill_structure(r, fields);
    fill_constraints(r, {fields.begin() + 7, fields.end()});
    def.rows.push_back(std::move(r));
  }

  if (auto diags = structural_diagnostics(def); !diags.empty())
    throw ParseError(std::move(diags.front()));
  return def;
}

CxnDef parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::vector<Diagnostic> validate(const CxnDef& def) {
  auto out = structural_diagnostics(def);
  if (has_errors(out)) return out;

  const auto root = def.root_index();
  if (std::none_of(def.rows.begin(), def.rows.end(), [](const auto& r) { return r.required; }))
    out.push_back(error("", "REQUIRED", "construction has no required row"));
  else if (!def.rows[root].required)
    out.push_back(error(def.rows[root].id, "REQUIRED", "the internal-root row cannot be optional"));

  for (const auto& r : def.rows) {
    for (const auto* value : {&r.ud_form, &r.lemma, &r.upos, &r.deprel}) {
      if (*value && (value->value().empty() ||
                     value->value().find_first_of(" \t\n") != std::string::npos))
        out.push_back(error(r.id, "", "empty value or value with whitespace"));
    }
    if (r.head.kind == HeadRef::Kind::Unconstrained && r.deprel)
      out.push_back(error(r.id, "DEPREL", "DEPREL needs a HEAD row"));
    if (r.head.kind == HeadRef::Kind::InternalRoot && r.deprel && *r.deprel != "root")
      out.push_back(warning(r.id, "DEPREL",
                            "internal-root DEPREL '" + *r.deprel + "' is not matched"));
    if (r.head.kind == HeadRef::Kind::Row && r.required) {
      if (const auto* head = def.row(r.head.row); head && !head->required)
        out.push_back(error(r.id, "HEAD", "required row attached to optional row " + head->id));
    }
    for (const auto& [key, value] : r.sem_feats) {
      if (key == "OntoClass") {
        try {
          normalize_topic(value, r.upos.value_or(""));
        } catch (const Error& e) {
          out.push_back(error(r.id, "SEM.FEATS", e.what()));
        }
      } else if (key == "Aktionsart") {
        out.push_back(warning(r.id, "SEM.FEATS", "Aktionsart parsed but not evaluated"));
      }
    }
    for (const auto& c : r.identity) {
      if (const auto* target = def.row(c.target); target && !target->required)
        out.push_back(warning(r.id, "IDENTITY",
                              "refers to optional row " + target->id +
                                  "; the constraint is skipped when it is omitted"));
    }
  }
  return out;
}

bool has_errors(const std::vector<Diagnostic>& diags) {
  return std::any_of(diags.begin(), diags.end(), [](const Diagnostic& d) {
    return d.severity == Diagnostic::Severity::Error;
  });
}

std::string render(const CxnDef& def) {
  std::ostringstream out;
  if (!def.cxn_id.empty()) out << "#cxn-id = " << def.cxn_id << '\n';
  if (!def.name.empty()) out << "#cxn = " << def.name << '\n';
  if (!def.function.empty()) out << "#function = " << def.function << '\n';
  for (const auto& [k, v] : def.extra_metadata) out << '#' << k << " = " << v << '\n';
  out << '\n';
  for (std::size_t i = 0; i < std::size(kColumns); ++i)
    out << (i ? "\t" : "") << kColumns[i];
  out << '\n';
  const auto opt = [](const std::optional<std::string>& v) { return v ? *v : "_"; };
  for (const auto& r : def.rows) {
    std::string head = "_";
    if (r.head.kind == HeadRef::Kind::InternalRoot) head = "0";
    if (r.head.kind == HeadRef::Kind::Row) head = r.head.row;
    out << r.id << '\t' << opt(r.ud_form) << '\t' << opt(r.lemma) << '\t' << opt(r.upos)
        << '\t' << render_pairs(r.feats) << '\t' << head << '\t' << opt(r.deprel) << '\t'
        << (r.required ? "1" : "0") << '\t' << render_list(r.without) << '\t'
        << render_pairs(r.sem_feats) << '\t'
        << (r.adjacency == Adjacency::Free ? "FREE" : "_") << '\t' << render_list(r.identity)
        << '\n';
  }
  return out.str();
}

}  // namespace cxn::conllc
