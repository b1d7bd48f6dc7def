#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cxn/text.hpp"

namespace cxn::conllu {

using Features = std::map<std::string, std::string, FeatureKeyLess>;

/// One MISC item. `value` is absent for bare flags without '='.
struct MiscItem {
  std::string key;
  std::optional<std::string> value;

  bool operator==(const MiscItem&) const = default;
};

/// A syntactic word. Absent text columns are stored as empty strings and
/// written back as "_".
struct Token {
  int id = 0;
  std::string form;
  std::string lemma;
  std::string upos;
  std::optional<std::string> xpos;
  Features feats;
  int head = 0;
  std::string deprel;
  std::string deps;
  std::vector<MiscItem> misc;

  const std::string* misc_value(std::string_view key) const;
  void set_misc(std::string_view key, std::string value);

  bool operator==(const Token&) const = default;
};

/// A multiword-token range ("1-2") or empty node ("1.1") line, kept verbatim.
/// It is written immediately before tokens[before_token].
struct OpaqueRow {
  std::size_t before_token = 0;
  std::string line;

  bool operator==(const OpaqueRow&) const = default;
};

/// A "# key = value" comment. Comments without " = " keep the whole text in
/// `key` and have no value.
struct Comment {
  std::string key;
  std::optional<std::string> value;

  bool operator==(const Comment&) const = default;
};

struct Sentence {
  std::vector<Comment> metadata;
  std::vector<Token> tokens;
  std::vector<OpaqueRow> opaque;

  const std::string* meta(std::string_view key) const;
  const Token* token(int id) const;

  bool operator==(const Sentence&) const = default;
};

struct ParseError {
  std::size_t line = 0;
  std::size_t offset = 0;  // byte offset of the offending line
  std::string message;
};

struct Document {
  std::vector<Sentence> sentences;
  std::vector<ParseError> errors;
};

/// Parses a CoNLL-U stream. Structural problems skip the affected sentence
/// and are collected in Document::errors; invalid UTF-8 throws FormatError.
Document parse(std::istream& in);
Document parse(std::string_view text);
Document parse_file(const std::string& path);

/// Returns an empty string when the sentence is well formed.
std::string check(const Sentence& s);

/// Throws cxn::Error if any sentence violates the data-model invariants.
std::string serialize(std::span<const Sentence> sentences);
void serialize(std::span<const Sentence> sentences, std::ostream& out);

Features parse_features(std::string_view column);
std::string format_features(const Features& feats);

/// "sent_id" metadata if present, otherwise the 1-based sentence index.
std::string sentence_id(const Sentence& s, std::size_t index);

}  // namespace cxn::conllu
