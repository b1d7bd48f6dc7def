#pragma once

#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cxn/error.hpp"

namespace cxn::conllc {

/// A token field that WITHOUT and IDENTITY cells can name.
struct FieldRef {
  enum class Kind { Form, Lemma, Upos, Deprel, Feature };
  Kind kind = Kind::Form;
  std::string feature;  // set when kind == Feature

  static FieldRef parse(std::string_view text);  // "UD.FORM", "FEATS:Number", ...
  std::string str() const;

  auto operator<=>(const FieldRef&) const = default;
};

struct WithoutConstraint {
  enum class Scope { Self, Children };
  Scope scope = Scope::Self;
  FieldRef field;
  std::string value;

  std::string str() const;  // "CHILDREN:DEPREL=det"

  auto operator<=>(const WithoutConstraint&) const = default;
};

/// "UD.FORM=A" (equality) or "LEMMA=antonym:A" (WordNet relation).
struct IdentityConstraint {
  FieldRef field;
  std::optional<std::string> relation;
  std::string target;

  std::string str() const;

  auto operator<=>(const IdentityConstraint&) const = default;
};

enum class Adjacency { Strict, Free };

/// HEAD column: internal root ("0"), another row id, or unconstrained ("_").
struct HeadRef {
  enum class Kind { Unconstrained, InternalRoot, Row };
  Kind kind = Kind::Unconstrained;
  std::string row;

  auto operator<=>(const HeadRef&) const = default;
};

struct CxnRow {
  std::string id;
  std::optional<std::string> ud_form;
  std::optional<std::string> lemma;
  std::optional<std::string> upos;
  std::map<std::string, std::string> feats;
  HeadRef head;
  std::optional<std::string> deprel;
  bool required = true;
  std::vector<WithoutConstraint> without;
  std::map<std::string, std::string> sem_feats;  // OntoClass, Aktionsart
  Adjacency adjacency = Adjacency::Strict;
  std::vector<IdentityConstraint> identity;

  bool operator==(const CxnRow&) const = default;
};

struct CxnDef {
  std::string cxn_id;
  std::string name;
  std::string function;
  /// Other "#key = value" lines, in file order.
  std::vector<std::pair<std::string, std::string>> extra_metadata;
  std::vector<CxnRow> rows;

  const CxnRow* row(std::string_view id) const;
  /// Index of the internal-root row: the HEAD=0 row, or the first required
  /// row when no row uses HEAD=0. Requires a valid definition.
  std::size_t root_index() const;

  bool operator==(const CxnDef&) const = default;
};

struct Diagnostic {
  enum class Severity { Error, Warning };
  Severity severity = Severity::Error;
  std::string row;     // empty for definition-level problems
  std::string column;  // empty when not tied to one column
  std::string message;

  std::string str() const;
  bool operator==(const Diagnostic&) const = default;
};

/// Thrown by parse() for syntax errors and unresolvable references.
class ParseError : public Error {
 public:
  explicit ParseError(Diagnostic d);
  const Diagnostic& diagnostic() const noexcept { return diag_; }

 private:
  Diagnostic diag_;
};

/// Parses one construction. Accepts the single-block 12-column layout and the
/// split layout where columns 1-7 and 8-12 are two blocks zipped by row order.
/// Throws ParseError on syntax errors and on any structural error reported by
/// validate().
CxnDef parse(std::string_view text);
CxnDef parse_file(const std::string& path);

/// Full check of the definition; errors and warnings, in row order.
std::vector<Diagnostic> validate(const CxnDef& def);
bool has_errors(const std::vector<Diagnostic>& diags);

/// Canonical single-block writer; parse(render(d)) == d for valid d.
std::string render(const CxnDef& def);

}  // namespace cxn::conllc
