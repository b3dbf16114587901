#pragma once

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <string>
#include <vector>

#include <json.hpp>

#include "seedwizard/federation/connectors.hpp"
#include "seedwizard/net/http_get.hpp"

namespace seedwizard {

/// Settings for a connector that talks to a real search API. The credential
/// itself never appears in configuration, only the environment variable name.
struct LiveConnectorConfig {
  std::string id;
  std::string endpoint;
  std::string credential_env;
  std::chrono::milliseconds timeout{std::chrono::seconds{10}};
  std::string user_agent = "seedwizard/0.1";
};

inline std::string percent_encode(std::string_view s) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : s) {
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' ||
        c == '.' || c == '_' || c == '~') {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 15]);
    }
  }
  return out;
}

namespace live_detail {

inline std::string credential(const LiveConnectorConfig& config) {
  const char* value = std::getenv(config.credential_env.c_str());
  if (value == nullptr || *value == '\0')
    throw ConnectorUnavailable(config.id + ": credential variable " + config.credential_env + " is not set");
  return value;
}

inline nlohmann::json get_json(const LiveConnectorConfig& config, const std::string& query_string,
                               httplib::Headers headers) {
  const std::string target =
      config.endpoint + (config.endpoint.find('?') == std::string::npos ? "?" : "&") + query_string;
  const auto url = parse_http_url(target);
  if (!url) throw ConnectorUnavailable(config.id + ": bad endpoint " + config.endpoint);
  net::GetOptions options;
  options.timeout = config.timeout;
  options.user_agent = config.user_agent;
  options.headers = std::move(headers);
  const auto res = net::http_get(*url, options);
  if (!res.transport_ok) throw ConnectorUnavailable(config.id + ": " + res.error);
  if (res.status < 200 || res.status > 299)
    throw ConnectorUnavailable(config.id + ": upstream returned HTTP " + std::to_string(res.status));
  try {
    return nlohmann::json::parse(res.body);
  } catch (const nlohmann::json::exception&) {
    throw ConnectorUnavailable(config.id + ": upstream returned malformed JSON");
  }
}

}  // namespace live_detail

/// Reads a Bing-style web search payload: webPages.value[] of
/// {url, name, snippet}. Entries without a usable URL are dropped.
inline std::vector<WebResult> parse_web_search_payload(const nlohmann::json& payload, const std::string& source) {
  std::vector<WebResult> out;
  if (!payload.contains("webPages")) return out;
  for (const auto& v : payload["webPages"].value("value", nlohmann::json::array())) {
    const auto url = v.value("url", "");
    if (!is_absolute_http_url(url)) continue;
    WebResult r;
    r.url = normalize_url(url);
    r.title = v.value("name", "");
    r.description = v.value("snippet", "");
    r.rank = static_cast<int>(out.size()) + 1;
    r.source = source;
    out.push_back(std::move(r));
  }
  return out;
}

/// Reads a Twitter v2 recent-search payload. Shortened links are replaced
/// by the expanded_url the API reports in entities.urls.
inline std::vector<SocialPost> parse_social_search_payload(const nlohmann::json& payload) {
  std::vector<SocialPost> out;
  for (const auto& t : payload.value("data", nlohmann::json::array())) {
    Instant at{};
    if (t.contains("created_at")) at = parse_iso8601(t["created_at"].get<std::string>(), "created_at");
    auto post = make_post(t.value("id", ""), t.value("text", ""), t.value("author_id", ""), at);
    if (t.contains("entities") && t["entities"].contains("urls")) {
      std::vector<std::string> resolved;
      for (const auto& link : post.links) {
        std::string target = link;
        for (const auto& u : t["entities"]["urls"]) {
          const auto short_url = u.value("url", "");
          const auto expanded = u.value("expanded_url", "");
          if (is_absolute_http_url(short_url) && normalize_url(short_url) == link &&
              is_absolute_http_url(expanded)) {
            target = normalize_url(expanded);
            break;
          }
        }
        if (std::find(resolved.begin(), resolved.end(), target) == resolved.end()) resolved.push_back(target);
      }
      post.links = std::move(resolved);
    }
    out.push_back(std::move(post));
  }
  return out;
}

class LiveWebConnector final : public WebSearchConnector {
 public:
  explicit LiveWebConnector(LiveConnectorConfig config) : config_(std::move(config)) {}

  const std::string& id() const override { return config_.id; }

  std::vector<WebResult> search(const Query& query) const override {
    const auto key = live_detail::credential(config_);
    const auto payload = live_detail::get_json(
        config_, "q=" + percent_encode(query.text) + "&count=" + std::to_string(query.max_web_results),
        {{"Ocp-Apim-Subscription-Key", key}});
    return parse_web_search_payload(payload, config_.id);
  }

 private:
  LiveConnectorConfig config_;
};

class LiveSocialConnector final : public SocialSearchConnector {
 public:
  explicit LiveSocialConnector(LiveConnectorConfig config) : config_(std::move(config)) {}

  const std::string& id() const override { return config_.id; }

  std::vector<SocialPost> search(const Query& query) const override {
    const auto token = live_detail::credential(config_);
    // The API accepts page sizes 10..100 only.
    const int page = std::clamp(query.max_posts, 10, 100);
    const auto payload = live_detail::get_json(
        config_,
        "query=" + percent_encode(query.text) + "&max_results=" + std::to_string(page) +
            "&tweet.fields=created_at,author_id,entities",
        {{"Authorization", "Bearer " + token}});
    return parse_social_search_payload(payload);
  }

 private:
  LiveConnectorConfig config_;
};

}  // namespace seedwizard
