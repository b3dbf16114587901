#pragma once

#include <string>
#include <vector>

#include "seedwizard/clock.hpp"
#include "seedwizard/error.hpp"
#include "seedwizard/text.hpp"

namespace seedwizard {

/// A validated keyword query. Construct through make() so the text is trimmed
/// and both limits are checked.
struct Query {
  std::string text;
  int max_web_results = 10;
  int max_posts = 100;

  static Query make(std::string_view text, int max_web_results = 10, int max_posts = 100) {
    Query q;
    q.text = std::string(text::trim(text));
    q.max_web_results = max_web_results;
    q.max_posts = max_posts;
    q.validate();
    return q;
  }

  void validate() const {
    if (text::trim(text).empty()) throw ValidationError("query", "must not be empty");
    if (max_web_results < 1) throw ValidationError("max_web_results", "must be >= 1");
    if (max_posts < 1) throw ValidationError("max_posts", "must be >= 1");
  }

  bool operator==(const Query&) const = default;
};

struct WebResult {
  std::string url;
  std::string title;
  std::string description;
  int rank = 0;  // 1-based within one connector response
  std::string source;

  bool operator==(const WebResult&) const = default;
};

struct SocialPost {
  std::string id;
  std::string text;
  std::string author;
  Instant timestamp{};
  std::vector<std::string> links;     // normalized, deduplicated, in text order
  std::vector<std::string> hashtags;  // lowercase, no '#', deduplicated

  bool operator==(const SocialPost&) const = default;
};

struct RankedLink {
  std::string url;
  int frequency = 0;
  std::string description;
  std::vector<std::string> supporting_post_ids;

  bool operator==(const RankedLink&) const = default;
};

struct TagCount {
  std::string tag;
  int frequency = 0;

  bool operator==(const TagCount&) const = default;
};

/// Outcome of one connector within a federated search. Every configured
/// connector yields exactly one section, failed or not.
struct SectionStatus {
  std::string connector;
  std::string kind;  // "web" or "social"
  bool ok = true;
  std::size_t item_count = 0;
  std::string warning;

  bool operator==(const SectionStatus&) const = default;
};

struct SearchResponse {
  Query query;
  std::vector<WebResult> web;
  std::vector<RankedLink> social_links;
  std::vector<TagCount> proposed_keywords;
  std::vector<SectionStatus> sections;

  bool degraded() const {
    for (const auto& s : sections)
      if (!s.ok) return true;
    return false;
  }
};

}  // namespace seedwizard
