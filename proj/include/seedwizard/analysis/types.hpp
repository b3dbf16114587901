#pragma once

#include <string>
#include <string_view>

#include "seedwizard/error.hpp"

namespace seedwizard {

enum class KeywordOrigin { textrank, hashtag, manual };
enum class EntityType { PERSON, ORGANIZATION, LOCATION, OTHER };
enum class EntityOrigin { extracted, manual };

struct Keyword {
  std::string text;  // whitespace-normalized, non-empty
  double score = 0.0;
  KeywordOrigin origin = KeywordOrigin::textrank;

  bool operator==(const Keyword&) const = default;
};

struct Entity {
  std::string surface;  // as found in the text
  std::string label;    // canonical form; the surface when nothing applies
  std::string alias;    // acronym given in parentheses, may be empty
  EntityType type = EntityType::OTHER;
  EntityOrigin origin = EntityOrigin::extracted;

  bool operator==(const Entity&) const = default;
};

inline std::string_view to_string(KeywordOrigin o) {
  switch (o) {
    case KeywordOrigin::textrank: return "textrank";
    case KeywordOrigin::hashtag: return "hashtag";
    case KeywordOrigin::manual: return "manual";
  }
  return "manual";
}

inline std::string_view to_string(EntityType t) {
  switch (t) {
    case EntityType::PERSON: return "PERSON";
    case EntityType::ORGANIZATION: return "ORGANIZATION";
    case EntityType::LOCATION: return "LOCATION";
    case EntityType::OTHER: return "OTHER";
  }
  return "OTHER";
}

inline std::string_view to_string(EntityOrigin o) { return o == EntityOrigin::extracted ? "extracted" : "manual"; }

inline KeywordOrigin parse_keyword_origin(std::string_view s, const std::string& field = "origin") {
  if (s == "textrank") return KeywordOrigin::textrank;
  if (s == "hashtag") return KeywordOrigin::hashtag;
  if (s == "manual") return KeywordOrigin::manual;
  throw ValidationError(field, "unknown keyword origin '" + std::string(s) + "'");
}

inline EntityType parse_entity_type(std::string_view s, const std::string& field = "type") {
  if (s == "PERSON") return EntityType::PERSON;
  if (s == "ORGANIZATION") return EntityType::ORGANIZATION;
  if (s == "LOCATION") return EntityType::LOCATION;
  if (s == "OTHER") return EntityType::OTHER;
  throw ValidationError(field, "unknown entity type '" + std::string(s) + "'");
}

inline EntityOrigin parse_entity_origin(std::string_view s, const std::string& field = "origin") {
  if (s == "extracted") return EntityOrigin::extracted;
  if (s == "manual") return EntityOrigin::manual;
  throw ValidationError(field, "unknown entity origin '" + std::string(s) + "'");
}

}  // namespace seedwizard
