#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "seedwizard/analysis/types.hpp"
#include "seedwizard/clock.hpp"
#include "seedwizard/error.hpp"
#include "seedwizard/text.hpp"
#include "seedwizard/url.hpp"

namespace seedwizard {

enum class EventKind {
  QueryIssued,
  SeedAdded,
  SeedRemoved,
  KeywordAdded,
  KeywordRemoved,
  EntityAdded,
  EntityRemoved,
  ScheduleSet
};

enum class ProvenanceSource { search_result, social_link, suggestion, manual };

struct Provenance {
  ProvenanceSource source = ProvenanceSource::manual;
  std::string query;  // originating query text, empty when none

  bool operator==(const Provenance&) const = default;
};

struct Schedule {
  Instant start{};
  std::chrono::seconds duration{0};

  bool operator==(const Schedule&) const = default;
};

struct SpecKeyword {
  std::string text;
  KeywordOrigin origin = KeywordOrigin::manual;

  bool operator==(const SpecKeyword&) const = default;
};

struct SpecEntity {
  std::string label;
  EntityType type = EntityType::OTHER;
  EntityOrigin origin = EntityOrigin::manual;

  bool operator==(const SpecEntity&) const = default;
};

struct QueryPayload {
  std::string text;
  bool operator==(const QueryPayload&) const = default;
};

struct SeedPayload {
  std::string url;
  bool operator==(const SeedPayload&) const = default;
};

using EventPayload = std::variant<QueryPayload, SeedPayload, SpecKeyword, Entity, Schedule>;

/// One logged user action. Immutable once appended.
struct SpecEvent {
  std::uint64_t event_id = 0;
  std::string spec_id;
  Instant at{};
  EventKind kind = EventKind::QueryIssued;
  EventPayload payload;
  Provenance provenance;

  bool operator==(const SpecEvent&) const = default;
};

/// The crawl specification as a fold over its event log.
struct CrawlSpecification {
  std::string spec_id;
  std::string name;
  std::vector<std::string> seeds;  // normalized URLs, insertion order
  std::vector<SpecKeyword> keywords;
  std::vector<SpecEntity> entities;
  std::optional<Schedule> schedule;
  std::uint64_t version = 0;  // id of the last applied event

  bool operator==(const CrawlSpecification&) const = default;
};

// ---------------------------------------------------------------------------
// enum spelling

inline std::string_view to_string(EventKind k) {
  switch (k) {
    case EventKind::QueryIssued: return "QueryIssued";
    case EventKind::SeedAdded: return "SeedAdded";
    case EventKind::SeedRemoved: return "SeedRemoved";
    case EventKind::KeywordAdded: return "KeywordAdded";
    case EventKind::KeywordRemoved: return "KeywordRemoved";
    case EventKind::EntityAdded: return "EntityAdded";
    case EventKind::EntityRemoved: return "EntityRemoved";
    case EventKind::ScheduleSet: return "ScheduleSet";
  }
  return "QueryIssued";
}

inline EventKind parse_event_kind(std::string_view s) {
  for (auto k : {EventKind::QueryIssued, EventKind::SeedAdded, EventKind::SeedRemoved, EventKind::KeywordAdded,
                 EventKind::KeywordRemoved, EventKind::EntityAdded, EventKind::EntityRemoved, EventKind::ScheduleSet})
    if (to_string(k) == s) return k;
  throw ValidationError("kind", "unknown event kind '" + std::string(s) + "'");
}

inline std::string_view to_string(ProvenanceSource s) {
  switch (s) {
    case ProvenanceSource::search_result: return "search_result";
    case ProvenanceSource::social_link: return "social_link";
    case ProvenanceSource::suggestion: return "suggestion";
    case ProvenanceSource::manual: return "manual";
  }
  return "manual";
}

inline ProvenanceSource parse_provenance_source(std::string_view s) {
  for (auto p : {ProvenanceSource::search_result, ProvenanceSource::social_link, ProvenanceSource::suggestion,
                 ProvenanceSource::manual})
    if (to_string(p) == s) return p;
  throw ValidationError("provenance.source", "unknown provenance '" + std::string(s) + "'");
}

// ---------------------------------------------------------------------------
// item identity

inline std::string keyword_key(std::string_view text) { return text::casefold(text); }

/// Checks that payload fits kind and returns it in canonical form (URLs
/// normalized, texts whitespace-normalized, entity label defaulted).
inline EventPayload normalize_payload(EventKind kind, EventPayload payload) {
  switch (kind) {
    case EventKind::QueryIssued: {
      auto* q = std::get_if<QueryPayload>(&payload);
      if (!q) throw ValidationError("payload", "QueryIssued needs a query payload");
      q->text = std::string(text::trim(q->text));
      if (q->text.empty()) throw ValidationError("payload.text", "must not be empty");
      return payload;
    }
    case EventKind::SeedAdded:
    case EventKind::SeedRemoved: {
      auto* s = std::get_if<SeedPayload>(&payload);
      if (!s) throw ValidationError("payload", std::string(to_string(kind)) + " needs a url payload");
      s->url = normalize_url(s->url, "payload.url");
      return payload;
    }
    case EventKind::KeywordAdded:
    case EventKind::KeywordRemoved: {
      auto* k = std::get_if<SpecKeyword>(&payload);
      if (!k) throw ValidationError("payload", std::string(to_string(kind)) + " needs a keyword payload");
      k->text = text::normalize_whitespace(k->text);
      if (k->text.empty()) throw ValidationError("payload.text", "must not be empty");
      return payload;
    }
    case EventKind::EntityAdded:
    case EventKind::EntityRemoved: {
      auto* e = std::get_if<Entity>(&payload);
      if (!e) throw ValidationError("payload", std::string(to_string(kind)) + " needs an entity payload");
      e->surface = text::normalize_whitespace(e->surface);
      e->label = text::normalize_whitespace(e->label);
      if (e->label.empty()) e->label = e->surface;
      if (e->surface.empty()) e->surface = e->label;
      if (e->label.empty()) throw ValidationError("payload.label", "must not be empty");
      return payload;
    }
    case EventKind::ScheduleSet: {
      auto* s = std::get_if<Schedule>(&payload);
      if (!s) throw ValidationError("payload", "ScheduleSet needs a schedule payload");
      if (s->duration.count() <= 0) throw ValidationError("payload.duration_seconds", "must be positive");
      return payload;
    }
  }
  throw ValidationError("kind", "unhandled event kind");
}

// ---------------------------------------------------------------------------
// fold

/// Applies one event. Returns whether the item sets or schedule changed;
/// the version advances either way. event_id must follow spec.version.
inline bool fold_event(CrawlSpecification& spec, const SpecEvent& e) {
  if (e.event_id != spec.version + 1)
    throw CorruptionError(e.event_id, "event " + std::to_string(e.event_id) + " does not follow version " +
                                          std::to_string(spec.version));
  if (!spec.spec_id.empty() && !e.spec_id.empty() && e.spec_id != spec.spec_id)
    throw CorruptionError(e.event_id, "event belongs to spec '" + e.spec_id + "', not '" + spec.spec_id + "'");
  spec.version = e.event_id;
  bool changed = false;
  switch (e.kind) {
    case EventKind::QueryIssued:
      break;
    case EventKind::SeedAdded: {
      const auto& url = std::get<SeedPayload>(e.payload).url;
      if (std::find(spec.seeds.begin(), spec.seeds.end(), url) == spec.seeds.end()) {
        spec.seeds.push_back(url);
        changed = true;
      }
      break;
    }
    case EventKind::SeedRemoved: {
      const auto& url = std::get<SeedPayload>(e.payload).url;
      const auto it = std::find(spec.seeds.begin(), spec.seeds.end(), url);
      if (it != spec.seeds.end()) {
        spec.seeds.erase(it);
        changed = true;
      }
      break;
    }
    case EventKind::KeywordAdded:
    case EventKind::KeywordRemoved: {
      const auto& k = std::get<SpecKeyword>(e.payload);
      const auto key = keyword_key(k.text);
      const auto it = std::find_if(spec.keywords.begin(), spec.keywords.end(),
                                   [&](const SpecKeyword& x) { return keyword_key(x.text) == key; });
      if (e.kind == EventKind::KeywordAdded && it == spec.keywords.end()) {
        spec.keywords.push_back(k);
        changed = true;
      } else if (e.kind == EventKind::KeywordRemoved && it != spec.keywords.end()) {
        spec.keywords.erase(it);
        changed = true;
      }
      break;
    }
    case EventKind::EntityAdded:
    case EventKind::EntityRemoved: {
      const auto& ent = std::get<Entity>(e.payload);
      const auto it = std::find_if(spec.entities.begin(), spec.entities.end(),
                                   [&](const SpecEntity& x) { return x.label == ent.label; });
      if (e.kind == EventKind::EntityAdded && it == spec.entities.end()) {
        spec.entities.push_back({ent.label, ent.type, ent.origin});
        changed = true;
      } else if (e.kind == EventKind::EntityRemoved && it != spec.entities.end()) {
        spec.entities.erase(it);
        changed = true;
      }
      break;
    }
    case EventKind::ScheduleSet:
      spec.schedule = std::get<Schedule>(e.payload);
      changed = true;
      break;
  }
  return changed;
}

/// Pure left fold of a log onto base. A gap or disorder in event ids is a
/// CorruptionError.
inline CrawlSpecification replay(const std::vector<SpecEvent>& events, CrawlSpecification base = {}) {
  for (const auto& e : events) {
    if (base.spec_id.empty()) base.spec_id = e.spec_id;
    fold_event(base, e);
  }
  return base;
}

// ---------------------------------------------------------------------------
// crawl description

enum class ItemKind { seed, keyword, entity };

inline std::string_view to_string(ItemKind k) {
  switch (k) {
    case ItemKind::seed: return "seed";
    case ItemKind::keyword: return "keyword";
    case ItemKind::entity: return "entity";
  }
  return "seed";
}

struct QueryRecord {
  std::uint64_t event_id = 0;
  Instant at{};
  std::string text;
  bool operator==(const QueryRecord&) const = default;
};

/// Which event put an item into the spec, or took it out.
struct ItemRecord {
  ItemKind kind = ItemKind::seed;
  std::string value;  // URL, keyword text or entity label
  std::uint64_t event_id = 0;
  Instant at{};
  Provenance provenance;
  bool operator==(const ItemRecord&) const = default;
};

struct ScheduleRecord {
  std::uint64_t event_id = 0;
  Instant at{};
  Schedule schedule;
  bool operator==(const ScheduleRecord&) const = default;
};

struct CrawlDescription {
  CrawlSpecification spec;
  std::vector<QueryRecord> queries;
  std::vector<ItemRecord> item_provenance;  // one per current item, in spec order
  std::vector<ItemRecord> removed_items;    // effective removals, chronological
  std::vector<ScheduleRecord> schedule_history;
  std::vector<SpecEvent> events;
};

inline CrawlDescription describe(const std::vector<SpecEvent>& events, CrawlSpecification base = {}) {
  CrawlDescription d;
  // (kind, identity key) -> introducing event
  std::vector<std::pair<std::pair<ItemKind, std::string>, ItemRecord>> introduced;
  auto find_intro = [&](ItemKind kind, const std::string& key) {
    return std::find_if(introduced.begin(), introduced.end(),
                        [&](const auto& p) { return p.first.first == kind && p.first.second == key; });
  };

  for (const auto& e : events) {
    if (base.spec_id.empty()) base.spec_id = e.spec_id;
    const bool changed = fold_event(base, e);
    ItemKind kind = ItemKind::seed;
    std::string value, key;
    switch (e.kind) {
      case EventKind::QueryIssued:
        d.queries.push_back({e.event_id, e.at, std::get<QueryPayload>(e.payload).text});
        continue;
      case EventKind::ScheduleSet:
        d.schedule_history.push_back({e.event_id, e.at, std::get<Schedule>(e.payload)});
        continue;
      case EventKind::SeedAdded:
      case EventKind::SeedRemoved:
        kind = ItemKind::seed;
        value = key = std::get<SeedPayload>(e.payload).url;
        break;
      case EventKind::KeywordAdded:
      case EventKind::KeywordRemoved:
        kind = ItemKind::keyword;
        value = std::get<SpecKeyword>(e.payload).text;
        key = keyword_key(value);
        break;
      case EventKind::EntityAdded:
      case EventKind::EntityRemoved:
        kind = ItemKind::entity;
        value = key = std::get<Entity>(e.payload).label;
        break;
    }
    if (!changed) continue;
    const bool added =
        e.kind == EventKind::SeedAdded || e.kind == EventKind::KeywordAdded || e.kind == EventKind::EntityAdded;
    ItemRecord record{kind, value, e.event_id, e.at, e.provenance};
    const auto it = find_intro(kind, key);
    if (added) {
      if (it == introduced.end()) introduced.push_back({{kind, key}, record});
      else it->second = record;
    } else {
      if (it != introduced.end()) introduced.erase(it);
      d.removed_items.push_back(record);
    }
  }

  auto provenance_of = [&](ItemKind kind, const std::string& key, const std::string& value) {
    const auto it = find_intro(kind, key);
    if (it == introduced.end())
      throw CorruptionError(base.version, "no introducing event for " + std::string(to_string(kind)) + " " + value);
    ItemRecord r = it->second;
    r.value = value;
    return r;
  };
  for (const auto& s : base.seeds) d.item_provenance.push_back(provenance_of(ItemKind::seed, s, s));
  for (const auto& k : base.keywords)
    d.item_provenance.push_back(provenance_of(ItemKind::keyword, keyword_key(k.text), k.text));
  for (const auto& e : base.entities) d.item_provenance.push_back(provenance_of(ItemKind::entity, e.label, e.label));

  d.spec = std::move(base);
  d.events = events;
  return d;
}

// ---------------------------------------------------------------------------
// JSON codecs

inline nlohmann::ordered_json provenance_to_json(const Provenance& p) {
  nlohmann::ordered_json j{{"source", to_string(p.source)}};
  if (!p.query.empty()) j["query"] = p.query;
  return j;
}

inline Provenance provenance_from_json(const nlohmann::json& j) {
  Provenance p;
  if (j.is_null()) return p;
  if (!j.is_object()) throw ValidationError("provenance", "must be an object");
  p.source = parse_provenance_source(j.value("source", "manual"));
  p.query = j.value("query", "");
  return p;
}

inline nlohmann::ordered_json schedule_to_json(const Schedule& s) {
  return {{"start", to_iso8601(s.start)}, {"duration_seconds", s.duration.count()}};
}

inline Schedule schedule_from_json(const nlohmann::json& j, const std::string& field = "schedule") {
  if (!j.is_object()) throw ValidationError(field, "must be an object");
  if (!j.contains("start") || !j["start"].is_string()) throw ValidationError(field + ".start", "required ISO-8601 string");
  if (!j.contains("duration_seconds") || !j["duration_seconds"].is_number_integer())
    throw ValidationError(field + ".duration_seconds", "required integer");
  Schedule s;
  s.start = parse_iso8601(j["start"].get<std::string>(), field + ".start");
  s.duration = std::chrono::seconds{j["duration_seconds"].get<std::int64_t>()};
  return s;
}

inline nlohmann::ordered_json payload_to_json(const EventPayload& payload) {
  return std::visit(
      [](const auto& p) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, QueryPayload>) {
          return {{"text", p.text}};
        } else if constexpr (std::is_same_v<T, SeedPayload>) {
          return {{"url", p.url}};
        } else if constexpr (std::is_same_v<T, SpecKeyword>) {
          return {{"text", p.text}, {"origin", to_string(p.origin)}};
        } else if constexpr (std::is_same_v<T, Entity>) {
          nlohmann::ordered_json j{{"label", p.label}, {"surface", p.surface}};
          if (!p.alias.empty()) j["alias"] = p.alias;
          j["type"] = to_string(p.type);
          j["origin"] = to_string(p.origin);
          return j;
        } else {
          return schedule_to_json(p);
        }
      },
      payload);
}

namespace codec_detail {
inline std::string required_string(const nlohmann::json& j, const std::string& key, const std::string& field) {
  if (!j.is_object() || !j.contains(key) || !j[key].is_string())
    throw ValidationError(field + "." + key, "required string");
  return j[key].get<std::string>();
}
}  // namespace codec_detail

/// Decodes and normalizes a payload for kind. Removal payloads only need
/// the identifying field.
inline EventPayload payload_from_json(EventKind kind, const nlohmann::json& j) {
  using codec_detail::required_string;
  if (!j.is_object()) throw ValidationError("payload", "must be an object");
  EventPayload payload;
  switch (kind) {
    case EventKind::QueryIssued:
      payload = QueryPayload{required_string(j, "text", "payload")};
      break;
    case EventKind::SeedAdded:
    case EventKind::SeedRemoved:
      payload = SeedPayload{required_string(j, "url", "payload")};
      break;
    case EventKind::KeywordAdded:
    case EventKind::KeywordRemoved:
      payload = SpecKeyword{required_string(j, "text", "payload"),
                            parse_keyword_origin(j.value("origin", "manual"), "payload.origin")};
      break;
    case EventKind::EntityAdded:
    case EventKind::EntityRemoved: {
      Entity e;
      e.label = j.value("label", "");
      e.surface = j.value("surface", "");
      e.alias = j.value("alias", "");
      e.type = parse_entity_type(j.value("type", "OTHER"), "payload.type");
      e.origin = parse_entity_origin(j.value("origin", "manual"), "payload.origin");
      if (text::trim(e.label).empty() && text::trim(e.surface).empty())
        throw ValidationError("payload.label", "required string");
      payload = e;
      break;
    }
    case EventKind::ScheduleSet:
      payload = schedule_from_json(j, "payload");
      break;
  }
  return normalize_payload(kind, std::move(payload));
}

inline nlohmann::ordered_json event_to_json(const SpecEvent& e) {
  return {{"event_id", e.event_id},
          {"spec_id", e.spec_id},
          {"at", to_iso8601(e.at)},
          {"kind", to_string(e.kind)},
          {"payload", payload_to_json(e.payload)},
          {"provenance", provenance_to_json(e.provenance)}};
}

inline SpecEvent event_from_json(const nlohmann::json& j) {
  SpecEvent e;
  if (!j.is_object() || !j.contains("event_id") || !j["event_id"].is_number_unsigned())
    throw ValidationError("event_id", "required unsigned integer");
  e.event_id = j["event_id"].get<std::uint64_t>();
  e.spec_id = codec_detail::required_string(j, "spec_id", "event");
  e.at = parse_iso8601(codec_detail::required_string(j, "at", "event"), "event.at");
  e.kind = parse_event_kind(codec_detail::required_string(j, "kind", "event"));
  e.payload = payload_from_json(e.kind, j.value("payload", nlohmann::json::object()));
  e.provenance = provenance_from_json(j.value("provenance", nlohmann::json()));
  return e;
}

/// Full internal state, used for snapshots and API reads.
inline nlohmann::ordered_json spec_to_json(const CrawlSpecification& s) {
  nlohmann::ordered_json j;
  j["spec_id"] = s.spec_id;
  j["name"] = s.name;
  j["seeds"] = s.seeds;
  j["keywords"] = nlohmann::ordered_json::array();
  for (const auto& k : s.keywords) j["keywords"].push_back({{"text", k.text}, {"origin", to_string(k.origin)}});
  j["entities"] = nlohmann::ordered_json::array();
  for (const auto& e : s.entities)
    j["entities"].push_back({{"label", e.label}, {"type", to_string(e.type)}, {"origin", to_string(e.origin)}});
  if (s.schedule) j["schedule"] = schedule_to_json(*s.schedule);
  j["version"] = s.version;
  return j;
}

namespace codec_detail {
inline void read_items(const nlohmann::json& j, CrawlSpecification& s) {
  if (!j.contains("seeds") || !j["seeds"].is_array()) throw ValidationError("seeds", "required array");
  if (!j.contains("keywords") || !j["keywords"].is_array()) throw ValidationError("keywords", "required array");
  if (!j.contains("entities") || !j["entities"].is_array()) throw ValidationError("entities", "required array");
  for (const auto& u : j["seeds"]) {
    if (!u.is_string()) throw ValidationError("seeds", "entries must be strings");
    s.seeds.push_back(normalize_url(u.get<std::string>(), "seeds"));
  }
  for (const auto& k : j["keywords"])
    s.keywords.push_back({required_string(k, "text", "keywords"),
                          parse_keyword_origin(required_string(k, "origin", "keywords"), "keywords.origin")});
  for (const auto& e : j["entities"])
    s.entities.push_back({required_string(e, "label", "entities"),
                          parse_entity_type(required_string(e, "type", "entities"), "entities.type"),
                          parse_entity_origin(required_string(e, "origin", "entities"), "entities.origin")});
  if (j.contains("schedule")) s.schedule = schedule_from_json(j["schedule"]);
  if (!j.contains("version") || !j["version"].is_number_unsigned())
    throw ValidationError("version", "required unsigned integer");
  s.version = j["version"].get<std::uint64_t>();
}
}  // namespace codec_detail

inline CrawlSpecification spec_from_json(const nlohmann::json& j) {
  CrawlSpecification s;
  s.spec_id = codec_detail::required_string(j, "spec_id", "spec");
  s.name = codec_detail::required_string(j, "name", "spec");
  codec_detail::read_items(j, s);
  return s;
}

// ---------------------------------------------------------------------------
// canonical export document

/// The document a crawler consumes. Field order is fixed:
/// name, seeds, keywords, entities, schedule (only when set), generated_at,
/// version.
inline std::string export_document(const CrawlSpecification& s, Instant generated_at) {
  nlohmann::ordered_json j;
  j["name"] = s.name;
  j["seeds"] = s.seeds;
  j["keywords"] = nlohmann::ordered_json::array();
  for (const auto& k : s.keywords) j["keywords"].push_back({{"text", k.text}, {"origin", to_string(k.origin)}});
  j["entities"] = nlohmann::ordered_json::array();
  for (const auto& e : s.entities)
    j["entities"].push_back({{"label", e.label}, {"type", to_string(e.type)}, {"origin", to_string(e.origin)}});
  if (s.schedule) j["schedule"] = schedule_to_json(*s.schedule);
  j["generated_at"] = to_iso8601(generated_at);
  j["version"] = s.version;
  return j.dump(2);
}

struct ExportedSpecification {
  CrawlSpecification spec;  // spec_id is not part of the document and stays empty
  Instant generated_at{};
};

inline ExportedSpecification parse_export_document(std::string_view document) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(document);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("document", std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("document", "must be an object");
  ExportedSpecification out;
  out.spec.name = codec_detail::required_string(j, "name", "document");
  codec_detail::read_items(j, out.spec);
  out.generated_at = parse_iso8601(codec_detail::required_string(j, "generated_at", "document"), "generated_at");
  return out;
}

}  // namespace seedwizard
