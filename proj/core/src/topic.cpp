#include "cxn/topic.hpp"

#include <array>

#include "cxn/error.hpp"
#include "cxn/text.hpp"

namespace cxn {

namespace {

constexpr std::array<std::string_view, 26> kNounTopics = {
    "noun.Tops",      "noun.act",        "noun.animal",    "noun.artifact",
    "noun.attribute", "noun.body",       "noun.cognition", "noun.communication",
    "noun.event",     "noun.feeling",    "noun.food",      "noun.group",
    "noun.location",  "noun.motive",     "noun.object",    "noun.person",
    "noun.phenomenon", "noun.plant",     "noun.possession", "noun.process",
    "noun.quantity",  "noun.relation",   "noun.shape",     "noun.state",
    "noun.substance", "noun.time"};

constexpr std::array<std::string_view, 15> kVerbTopics = {
    "verb.body",        "verb.change",     "verb.cognition", "verb.communication",
    "verb.competition", "verb.consumption", "verb.contact",  "verb.creation",
    "verb.emotion",     "verb.motion",     "verb.perception", "verb.possession",
    "verb.social",      "verb.stative",    "verb.weather"};

}  // namespace

std::string_view to_string(Pos pos) { return pos == Pos::Noun ? "noun" : "verb"; }

std::optional<Pos> pos_from_tag(std::string_view tag) {
  if (tag == "n" || tag == "noun") return Pos::Noun;
  if (tag == "v" || tag == "verb") return Pos::Verb;
  return std::nullopt;
}

std::optional<Pos> pos_from_upos(std::string_view upos) {
  if (upos == "NOUN" || upos == "PROPN") return Pos::Noun;
  if (upos == "VERB") return Pos::Verb;
  return std::nullopt;
}

std::span<const std::string_view> topic_inventory(Pos pos) {
  if (pos == Pos::Noun) return kNounTopics;
  return kVerbTopics;
}

std::optional<Topic> Topic::try_parse(std::string_view qualified) {
  for (auto pos : {Pos::Noun, Pos::Verb}) {
    for (auto name : topic_inventory(pos)) {
      if (iequals_ascii(name, qualified)) return Topic(std::string(name), pos);
    }
  }
  return std::nullopt;
}

Topic Topic::parse(std::string_view qualified) {
  if (auto t = try_parse(qualified)) return *t;
  throw Error("unknown topic '" + std::string(qualified) + "'");
}

Topic normalize_topic(std::string_view value, std::string_view upos) {
  const bool qualified = value.find('.') != std::string_view::npos;
  const auto pos = pos_from_upos(upos);
  if (!upos.empty() && !pos)
    throw Error("no topic inventory for this POS (" + std::string(upos) + ")");
  if (!qualified) {
    if (!pos) throw Error("bare topic '" + std::string(value) + "' needs a NOUN or VERB slot");
    return Topic::parse(std::string(to_string(*pos)) + "." + std::string(value));
  }
  auto topic = Topic::parse(value);
  if (pos && topic.pos() != *pos)
    throw Error("topic " + topic.str() + " does not fit a " + std::string(upos) + " slot");
  return topic;
}

}  // namespace cxn
