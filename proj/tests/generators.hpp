#pragma once

// Random inputs shared by the property tests and the acceptance run.

#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "seedwizard/spec/model.hpp"

namespace seedwizard {

// Readable failure messages in GoogleTest.
inline void PrintTo(const CrawlSpecification& s, std::ostream* os) { *os << spec_to_json(s).dump(); }
inline void PrintTo(const SpecEvent& e, std::ostream* os) { *os << event_to_json(e).dump(); }

}  // namespace seedwizard

namespace gen {

inline seedwizard::Instant instant(std::mt19937& rng) {
  return seedwizard::Instant{std::chrono::seconds{1388534400 + std::uniform_int_distribution<long>(0, 400000000)(rng)}};
}

template <class T>
const T& pick(std::mt19937& rng, const std::vector<T>& v) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

inline seedwizard::Provenance provenance(std::mt19937& rng) {
  using seedwizard::ProvenanceSource;
  static const std::vector<ProvenanceSource> sources = {ProvenanceSource::search_result, ProvenanceSource::social_link,
                                                        ProvenanceSource::suggestion, ProvenanceSource::manual};
  static const std::vector<std::string> queries = {"", "ebola", "ukraine crisis", "Ébola \"quoted\""};
  return {pick(rng, sources), pick(rng, queries)};
}

/// Payload for kind, drawn from small pools so adds and removes collide.
/// Seeds and keywords come in variants that normalize to the same identity.
inline seedwizard::EventPayload payload(std::mt19937& rng, seedwizard::EventKind kind) {
  using namespace seedwizard;
  static const std::vector<std::string> urls = {"http://ex.org/a", "http://ex.org/a#top", "https://EX.org/b",
                                                "https://ex.org/b", "http://who.int/", "http://who.int",
                                                "https://news.example.org/2014/10/ebola-latest?ref=x"};
  static const std::vector<std::string> words = {"ebola", "Ebola", "virus outbreak", "virus  outbreak", "Liberia",
                                                 "Ärzte", "westafrica"};
  static const std::vector<std::string> labels = {"World Health Organization", "Robert Koch Institute", "Sierra Leone",
                                                  "Peter Piot", "Médecins Sans Frontières"};
  switch (kind) {
    case EventKind::QueryIssued: return QueryPayload{pick(rng, words)};
    case EventKind::SeedAdded:
    case EventKind::SeedRemoved: return SeedPayload{pick(rng, urls)};
    case EventKind::KeywordAdded:
    case EventKind::KeywordRemoved:
      return SpecKeyword{pick(rng, words), static_cast<KeywordOrigin>(std::uniform_int_distribution<int>(0, 2)(rng))};
    case EventKind::EntityAdded:
    case EventKind::EntityRemoved: {
      Entity e;
      e.label = pick(rng, labels);
      e.surface = e.label;
      e.alias = rng() % 2 ? "" : "X" + std::to_string(rng() % 3);
      e.type = static_cast<EntityType>(std::uniform_int_distribution<int>(0, 3)(rng));
      e.origin = static_cast<EntityOrigin>(std::uniform_int_distribution<int>(0, 1)(rng));
      return e;
    }
    case EventKind::ScheduleSet:
      return Schedule{instant(rng), std::chrono::seconds{std::uniform_int_distribution<long>(1, 90L * 86400)(rng)}};
  }
  return QueryPayload{"ebola"};
}

/// A well-formed log of n events (ids 1..n) for spec_id.
inline std::vector<seedwizard::SpecEvent> events(std::mt19937& rng, const std::string& spec_id, std::size_t n) {
  using namespace seedwizard;
  std::vector<SpecEvent> out;
  auto t = instant(rng);
  for (std::size_t i = 0; i < n; ++i) {
    SpecEvent e;
    e.event_id = i + 1;
    e.spec_id = spec_id;
    t += std::chrono::seconds{std::uniform_int_distribution<int>(0, 600)(rng)};
    e.at = t;
    e.kind = static_cast<EventKind>(std::uniform_int_distribution<int>(0, 7)(rng));
    e.payload = normalize_payload(e.kind, payload(rng, e.kind));
    e.provenance = provenance(rng);
    out.push_back(std::move(e));
  }
  return out;
}

inline std::string name(std::mt19937& rng) {
  static const std::vector<std::string> names = {"Ebola outbreak", "Ukraine crisis 2014", "Crawl \"α\" / test",
                                                 "back\\slash", "tab\tseparated", "日本語"};
  return pick(rng, names);
}

/// A reachable specification: the fold of a random log.
inline seedwizard::CrawlSpecification spec(std::mt19937& rng, std::size_t max_events = 50) {
  auto log = events(rng, "spec-000001", std::uniform_int_distribution<std::size_t>(0, max_events)(rng));
  seedwizard::CrawlSpecification base;
  base.spec_id = "spec-000001";
  base.name = name(rng);
  return seedwizard::replay(log, base);
}

}  // namespace gen
