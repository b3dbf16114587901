#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "seedwizard/analysis/html_text.hpp"
#include "seedwizard/clock.hpp"
#include "seedwizard/net/http_get.hpp"
#include "seedwizard/url.hpp"

namespace seedwizard {

struct PageContent {
  std::string url;        // as requested
  std::string final_url;  // after redirects
  Instant fetched_at{};
  int http_status = 0;    // 0 when no HTTP answer arrived
  std::string html;       // raw bytes, possibly cut at the size cap
  std::string encoding;   // charset declared by the server, may be empty
  std::string content_type;
  std::string title;
  std::string text;       // empty unless status is 2xx and the body is HTML
  bool truncated = false;
  std::string error;

  bool ok() const { return http_status >= 200 && http_status <= 299; }

  bool is_html() const {
    if (content_type.empty()) return true;
    const auto ct = text::to_lower(content_type);
    return ct.find("html") != std::string::npos || ct.find("xml") != std::string::npos;
  }
};

struct FetchPolicy {
  std::chrono::milliseconds timeout{std::chrono::seconds{10}};
  std::size_t max_body_bytes = 1 << 20;
  int max_redirects = 5;
  std::string user_agent = "seedwizard/0.1";
  // Test hook: when set, http(s)://host/path is requested as
  // <fixture_root>/host/path instead.
  std::optional<std::string> fixture_root;
};

class PageFetcher {
 public:
  virtual ~PageFetcher() = default;
  virtual PageContent fetch(const std::string& url) const = 0;
};

inline std::string charset_of(std::string_view content_type) {
  const auto lower = text::to_lower(content_type);
  const auto pos = lower.find("charset=");
  if (pos == std::string::npos) return {};
  auto value = std::string_view(lower).substr(pos + 8);
  value = value.substr(0, value.find(';'));
  value = text::trim(value);
  if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'')) value = value.substr(1, value.size() - 2);
  return std::string(value);
}

/// Fills the derived fields of a fetched page (status, text, title).
inline void finish_page(PageContent& page) {
  page.encoding = charset_of(page.content_type);
  if (!page.ok() || !page.is_html()) return;
  auto extracted = extract_text(page.html, page.encoding);
  page.title = std::move(extracted.title);
  page.text = std::move(extracted.text);
}

/// Resolves a redirect target against the URL that produced it.
inline std::optional<std::string> resolve_location(const Url& base, std::string_view location) {
  location = text::trim(location);
  if (location.empty()) return std::nullopt;
  if (is_absolute_http_url(location)) return std::string(location);
  if (location.substr(0, 2) == "//") return base.scheme + ":" + std::string(location);
  if (location.front() == '/') return base.origin() + std::string(location);
  const auto slash = base.path.rfind('/');
  const std::string dir = slash == std::string::npos ? "/" : base.path.substr(0, slash + 1);
  return base.origin() + dir + std::string(location);
}

/// Single-page HTTP fetcher. Follows at most max_redirects redirects, stops
/// reading at the body cap, and reports network trouble in the result
/// instead of throwing.
class HttpPageFetcher final : public PageFetcher {
 public:
  explicit HttpPageFetcher(FetchPolicy policy = {}, std::shared_ptr<const Clock> clock = std::make_shared<SystemClock>())
      : policy_(std::move(policy)), clock_(std::move(clock)) {}

  PageContent fetch(const std::string& url) const override {
    PageContent page;
    page.url = url;
    page.fetched_at = clock_->now();
    auto parsed = parse_http_url(url);
    if (!parsed) {
      page.error = "not an absolute http(s) URL";
      return page;
    }
    std::string current = policy_.fixture_root ? rewrite_for_fixture(*parsed) : url;
    for (int redirects = 0;; ++redirects) {
      const auto target = parse_http_url(current);
      if (!target) {
        page.error = "bad redirect target " + current;
        return page;
      }
      net::GetOptions options;
      options.timeout = policy_.timeout;
      options.user_agent = policy_.user_agent;
      options.max_body_bytes = policy_.max_body_bytes;
      auto res = net::http_get(*target, options);
      if (!res.transport_ok) {
        page.error = res.error;
        return page;
      }
      page.http_status = res.status;
      page.final_url = current;
      if (res.status >= 300 && res.status <= 399 && res.status != 304) {
        const auto next = resolve_location(*target, res.header("Location"));
        if (!next) {
          page.error = "redirect without Location";
          return page;
        }
        if (redirects >= policy_.max_redirects) {
          page.error = "too many redirects";
          return page;
        }
        current = *next;
        continue;
      }
      page.content_type = res.header("Content-Type");
      page.truncated = res.truncated;
      if (page.ok()) page.html = std::move(res.body);
      finish_page(page);
      return page;
    }
  }

 private:
  std::string rewrite_for_fixture(const Url& u) const {
    std::string root = *policy_.fixture_root;
    while (!root.empty() && root.back() == '/') root.pop_back();
    return root + "/" + text::to_lower(u.host) + u.path_and_query();
  }

  FetchPolicy policy_;
  std::shared_ptr<const Clock> clock_;
};

/// Offline fetcher backed by a directory:
///   index.json: {"pages": {"<url>": {"status": 200, "content_type": "...",
///                                     "file": "page.html", "location": "..."}}}
/// Unlisted URLs behave like unreachable hosts.
class DirectoryPageFetcher final : public PageFetcher {
 public:
  explicit DirectoryPageFetcher(std::filesystem::path root, FetchPolicy policy = {},
                                std::shared_ptr<const Clock> clock = std::make_shared<SystemClock>())
      : root_(std::move(root)), policy_(std::move(policy)), clock_(std::move(clock)) {
    std::ifstream in(root_ / "index.json");
    if (!in) throw ValidationError("fixtures", "missing " + (root_ / "index.json").string());
    const auto index = nlohmann::json::parse(in);
    for (const auto& [url, entry] : index.at("pages").items()) pages_[normalize_url(url)] = entry;
  }

  PageContent fetch(const std::string& url) const override {
    PageContent page;
    page.url = url;
    page.fetched_at = clock_->now();
    if (!is_absolute_http_url(url)) {
      page.error = "not an absolute http(s) URL";
      return page;
    }
    std::string current = normalize_url(url);
    for (int redirects = 0;; ++redirects) {
      const auto it = pages_.find(current);
      if (it == pages_.end()) {
        page.error = "unreachable: no fixture for " + current;
        return page;
      }
      const auto& entry = it->second;
      page.http_status = entry.value("status", 200);
      page.final_url = current;
      if (page.http_status >= 300 && page.http_status <= 399) {
        if (redirects >= policy_.max_redirects) {
          page.error = "too many redirects";
          return page;
        }
        current = normalize_url(entry.at("location").get<std::string>());
        continue;
      }
      page.content_type = entry.value("content_type", "text/html; charset=utf-8");
      if (page.ok() && entry.contains("file")) {
        std::ifstream body(root_ / entry["file"].get<std::string>(), std::ios::binary);
        std::ostringstream buf;
        buf << body.rdbuf();
        page.html = buf.str();
        if (page.html.size() > policy_.max_body_bytes) {
          page.html.resize(policy_.max_body_bytes);
          page.truncated = true;
        }
      }
      finish_page(page);
      return page;
    }
  }

 private:
  std::filesystem::path root_;
  FetchPolicy policy_;
  std::shared_ptr<const Clock> clock_;
  std::map<std::string, nlohmann::json> pages_;
};

}  // namespace seedwizard
