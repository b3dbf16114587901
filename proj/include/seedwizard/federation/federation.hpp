#pragma once

#include <future>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "seedwizard/federation/connectors.hpp"
#include "seedwizard/federation/ranking.hpp"

namespace seedwizard {

/// What one connector produced for one query. error set means the section is
/// degraded and items is empty.
template <class T>
struct SourceResult {
  std::string connector;
  std::vector<T> items;
  std::optional<std::string> error;

  bool ok() const { return !error.has_value(); }
};

/// Fans a query out to every registered connector and folds the answers into
/// one SearchResponse. Register connectors before serving queries; searching
/// is safe from many threads afterwards.
class SearchFederation {
 public:
  void add(std::shared_ptr<const WebSearchConnector> connector) { web_.push_back(std::move(connector)); }
  void add(std::shared_ptr<const SocialSearchConnector> connector) { social_.push_back(std::move(connector)); }

  std::size_t connector_count() const { return web_.size() + social_.size(); }

  std::vector<std::string> web_connector_ids() const {
    std::vector<std::string> ids;
    for (const auto& c : web_) ids.push_back(c->id());
    return ids;
  }

  std::vector<std::string> social_connector_ids() const {
    std::vector<std::string> ids;
    for (const auto& c : social_) ids.push_back(c->id());
    return ids;
  }

  SourceResult<WebResult> search_web(const Query& query, const std::string& connector_id) const {
    query.validate();
    const auto& connector = find(web_, connector_id);
    SourceResult<WebResult> out{connector_id, {}, std::nullopt};
    try {
      auto results = connector.search(query);
      if (results.size() > static_cast<std::size_t>(query.max_web_results)) results.resize(query.max_web_results);
      for (std::size_t i = 0; i < results.size(); ++i) {
        results[i].rank = static_cast<int>(i) + 1;
        results[i].source = connector_id;
      }
      out.items = std::move(results);
    } catch (const std::exception& e) {
      out.error = e.what();
    }
    return out;
  }

  SourceResult<SocialPost> search_social(const Query& query, const std::string& connector_id) const {
    query.validate();
    const auto& connector = find(social_, connector_id);
    SourceResult<SocialPost> out{connector_id, {}, std::nullopt};
    try {
      auto posts = connector.search(query);
      if (posts.size() > static_cast<std::size_t>(query.max_posts)) posts.resize(query.max_posts);
      for (auto& p : posts) {
        // Live connectors may already have resolved short links; keep theirs.
        if (p.links.empty()) p.links = extract_post_links(p.text);
        if (p.hashtags.empty()) p.hashtags = extract_post_hashtags(p.text);
      }
      out.items = std::move(posts);
    } catch (const std::exception& e) {
      out.error = e.what();
    }
    return out;
  }

  /// Runs every connector concurrently. A failing source leaves an empty,
  /// flagged section; only a total failure is an error.
  SearchResponse federated_search(const Query& query) const {
    query.validate();
    if (connector_count() == 0) throw UpstreamUnavailable("no search connectors registered");

    std::vector<std::future<SourceResult<WebResult>>> web_jobs;
    std::vector<std::future<SourceResult<SocialPost>>> social_jobs;
    for (const auto& c : web_)
      web_jobs.push_back(std::async(std::launch::async, [this, &query, id = c->id()] { return search_web(query, id); }));
    for (const auto& c : social_)
      social_jobs.push_back(
          std::async(std::launch::async, [this, &query, id = c->id()] { return search_social(query, id); }));

    SearchResponse response;
    response.query = query;
    nlohmann::json causes = nlohmann::json::object();
    std::size_t failures = 0;
    auto record = [&](const auto& result, const char* kind) {
      SectionStatus section{result.connector, kind, result.ok(), result.items.size(), result.error.value_or("")};
      if (!result.ok()) {
        ++failures;
        causes[result.connector] = *result.error;
      }
      response.sections.push_back(std::move(section));
    };

    for (auto& job : web_jobs) {
      auto result = job.get();
      record(result, "web");
      response.web.insert(response.web.end(), result.items.begin(), result.items.end());
    }
    std::vector<SocialPost> posts;
    for (auto& job : social_jobs) {
      auto result = job.get();
      record(result, "social");
      posts.insert(posts.end(), result.items.begin(), result.items.end());
    }
    if (failures == connector_count()) throw UpstreamUnavailable("all search connectors failed", causes);

    response.social_links = extract_links_ranked(posts);
    response.proposed_keywords = extract_hashtags(posts);
    return response;
  }

 private:
  template <class C>
  static const C& find(const std::vector<std::shared_ptr<const C>>& list, const std::string& id) {
    for (const auto& c : list)
      if (c->id() == id) return *c;
    throw ValidationError("connector", "unknown connector '" + id + "'");
  }

  std::vector<std::shared_ptr<const WebSearchConnector>> web_;
  std::vector<std::shared_ptr<const SocialSearchConnector>> social_;
};

/// Loads every *.json document under dir as a fixture connector, in file-name
/// order.
inline void add_fixture_connectors(SearchFederation& federation, const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const auto& file : files) {
    const auto doc = read_json_file(file);
    const auto id = doc.value("connector", file.stem().string());
    const auto kind = doc.value("kind", "");
    if (kind == "web") {
      federation.add(std::make_shared<const FixtureWebConnector>(id, doc));
    } else if (kind == "social") {
      federation.add(std::make_shared<const FixtureSocialConnector>(id, doc));
    } else {
      throw ValidationError(file.string(), "fixture kind must be 'web' or 'social'");
    }
  }
}

}  // namespace seedwizard
