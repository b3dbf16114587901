#pragma once

#include <json.hpp>

#include "seedwizard/analysis/annotate.hpp"
#include "seedwizard/federation/types.hpp"
#include "seedwizard/spec/model.hpp"

namespace seedwizard {

using ojson = nlohmann::ordered_json;

inline ojson to_json(const Query& q) {
  return {{"text", q.text}, {"max_web_results", q.max_web_results}, {"max_posts", q.max_posts}};
}

inline ojson to_json(const Keyword& k) {
  return {{"text", k.text}, {"score", k.score}, {"origin", to_string(k.origin)}};
}

inline ojson to_json(const Entity& e) {
  ojson j{{"surface", e.surface}, {"label", e.label}};
  if (!e.alias.empty()) j["alias"] = e.alias;
  j["type"] = to_string(e.type);
  j["origin"] = to_string(e.origin);
  return j;
}

inline ojson to_json(const WebResult& r) {
  return {{"url", r.url}, {"title", r.title}, {"description", r.description}, {"rank", r.rank}, {"source", r.source}};
}

inline ojson to_json(const RankedLink& l) {
  return {{"url", l.url},
          {"frequency", l.frequency},
          {"description", l.description},
          {"supporting_post_ids", l.supporting_post_ids}};
}

inline ojson to_json(const TagCount& t) { return {{"tag", t.tag}, {"frequency", t.frequency}}; }

inline ojson to_json(const SectionStatus& s) {
  ojson j{{"connector", s.connector}, {"kind", s.kind}, {"ok", s.ok}, {"item_count", s.item_count}};
  if (!s.warning.empty()) j["warning"] = s.warning;
  return j;
}

/// The base fields with the annotation fields appended.
inline ojson to_json(const AnnotatedResult& a) {
  ojson j = std::visit([](const auto& b) { return to_json(b); }, a.base);
  j["analysis_status"] = to_string(a.status);
  j["keywords"] = ojson::array();
  for (const auto& k : a.keywords) j["keywords"].push_back(to_json(k));
  j["entities"] = ojson::array();
  for (const auto& e : a.entities) j["entities"].push_back(to_json(e));
  return j;
}

inline ojson to_json(const ItemRecord& r) {
  return {{"kind", to_string(r.kind)},
          {"value", r.value},
          {"event_id", r.event_id},
          {"at", to_iso8601(r.at)},
          {"provenance", provenance_to_json(r.provenance)}};
}

inline ojson to_json(const CrawlDescription& d) {
  ojson j;
  j["spec"] = spec_to_json(d.spec);
  j["queries"] = ojson::array();
  for (const auto& q : d.queries)
    j["queries"].push_back({{"event_id", q.event_id}, {"at", to_iso8601(q.at)}, {"text", q.text}});
  j["item_provenance"] = ojson::array();
  for (const auto& r : d.item_provenance) j["item_provenance"].push_back(to_json(r));
  j["removed_items"] = ojson::array();
  for (const auto& r : d.removed_items) j["removed_items"].push_back(to_json(r));
  j["schedule_history"] = ojson::array();
  for (const auto& s : d.schedule_history)
    j["schedule_history"].push_back(
        {{"event_id", s.event_id}, {"at", to_iso8601(s.at)}, {"schedule", schedule_to_json(s.schedule)}});
  j["events"] = ojson::array();
  for (const auto& e : d.events) j["events"].push_back(event_to_json(e));
  return j;
}

}  // namespace seedwizard
