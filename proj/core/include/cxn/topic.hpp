#pragma once

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace cxn {

enum class Pos { Noun, Verb };

std::string_view to_string(Pos pos);          // "noun" / "verb"
std::optional<Pos> pos_from_tag(std::string_view tag);  // "n"/"v"/"noun"/"verb"

/// Word class used for lexicon lookups: NOUN and PROPN map to nouns, VERB to
/// verbs, every other UD tag has no topic inventory.
std::optional<Pos> pos_from_upos(std::string_view upos);

/// A WordNet lexicographer-file name such as "noun.feeling". Only values from
/// the closed noun/verb inventory can be constructed.
class Topic {
 public:
  /// Accepts a qualified name, matched case-insensitively against the
  /// inventory. Throws cxn::Error for names outside it.
  static Topic parse(std::string_view qualified);
  static std::optional<Topic> try_parse(std::string_view qualified);

  const std::string& str() const noexcept { return value_; }
  Pos pos() const noexcept { return pos_; }

  auto operator<=>(const Topic& other) const { return value_ <=> other.value_; }
  bool operator==(const Topic& other) const { return value_ == other.value_; }

 private:
  Topic(std::string value, Pos pos) : value_(std::move(value)), pos_(pos) {}
  std::string value_;
  Pos pos_ = Pos::Noun;
};

/// The 26 noun and 15 verb lexicographer files, in inventory order.
std::span<const std::string_view> topic_inventory(Pos pos);

/// Resolves an OntoClass value against a slot's UPOS. Bare names ("feeling")
/// are qualified from the UPOS; qualified names must agree with it when a
/// UPOS is given. Throws cxn::Error on unknown topics or a UPOS without a
/// topic inventory.
Topic normalize_topic(std::string_view value, std::string_view upos);

}  // namespace cxn
