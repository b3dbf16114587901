#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "seedwizard/federation/post_text.hpp"
#include "seedwizard/federation/types.hpp"

namespace seedwizard {

/// Raised by a connector that cannot answer (network, auth, bad upstream
/// payload). Federation turns it into a degraded section.
class ConnectorUnavailable : public UpstreamUnavailable {
 public:
  using UpstreamUnavailable::UpstreamUnavailable;
};

// Connectors must be callable from several requests at once; the ones here
// keep no mutable state.
class WebSearchConnector {
 public:
  virtual ~WebSearchConnector() = default;
  virtual const std::string& id() const = 0;
  virtual std::vector<WebResult> search(const Query& query) const = 0;
};

class SocialSearchConnector {
 public:
  virtual ~SocialSearchConnector() = default;
  virtual const std::string& id() const = 0;
  virtual std::vector<SocialPost> search(const Query& query) const = 0;
};

// Fixture documents:
//   {"connector": "<id>", "kind": "web",
//    "queries": {"<exact query>": [{"url", "title", "description"}, ...]}}
//   {"connector": "<id>", "kind": "social",
//    "queries": {"<exact query>": [{"id", "text", "author", "timestamp"}, ...]}}
// Queries are matched on the exact (trimmed) text; anything else is empty.

inline nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError(path.string(), "cannot open file");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(path.string(), std::string("malformed JSON: ") + e.what());
  }
}

class FixtureWebConnector final : public WebSearchConnector {
 public:
  FixtureWebConnector(std::string id, const nlohmann::json& document) : id_(std::move(id)) {
    const auto queries = document.value("queries", nlohmann::json::object());
    for (const auto& [query, entries] : queries.items()) {
      auto& results = by_query_[query];
      for (const auto& e : entries) {
        WebResult r;
        r.url = normalize_url(e.at("url").get<std::string>());
        r.title = e.value("title", "");
        r.description = e.value("description", "");
        r.rank = static_cast<int>(results.size()) + 1;
        r.source = id_;
        results.push_back(std::move(r));
      }
    }
  }

  const std::string& id() const override { return id_; }

  std::vector<WebResult> search(const Query& query) const override {
    const auto it = by_query_.find(query.text);
    return it == by_query_.end() ? std::vector<WebResult>{} : it->second;
  }

 private:
  std::string id_;
  std::map<std::string, std::vector<WebResult>> by_query_;
};

/// Posts are taken verbatim; shortened links are not resolved in fixture mode.
class FixtureSocialConnector final : public SocialSearchConnector {
 public:
  FixtureSocialConnector(std::string id, const nlohmann::json& document) : id_(std::move(id)) {
    const auto queries = document.value("queries", nlohmann::json::object());
    for (const auto& [query, entries] : queries.items()) {
      auto& posts = by_query_[query];
      for (const auto& e : entries) {
        posts.push_back(make_post(e.at("id").get<std::string>(), e.at("text").get<std::string>(),
                                  e.value("author", ""),
                                  parse_iso8601(e.at("timestamp").get<std::string>())));
      }
    }
  }

  const std::string& id() const override { return id_; }

  std::vector<SocialPost> search(const Query& query) const override {
    const auto it = by_query_.find(query.text);
    return it == by_query_.end() ? std::vector<SocialPost>{} : it->second;
  }

 private:
  std::string id_;
  std::map<std::string, std::vector<SocialPost>> by_query_;
};

/// Test double that always fails, as a dead upstream would.
template <class Base>
class FailingConnector final : public Base {
 public:
  FailingConnector(std::string id, std::string reason) : id_(std::move(id)), reason_(std::move(reason)) {}
  const std::string& id() const override { return id_; }
  auto search(const Query&) const -> decltype(std::declval<const Base&>().search(std::declval<const Query&>())) override {
    throw ConnectorUnavailable(id_ + ": " + reason_);
  }

 private:
  std::string id_;
  std::string reason_;
};

}  // namespace seedwizard
