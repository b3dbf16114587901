#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "seedwizard/federation/types.hpp"

namespace seedwizard {

inline constexpr std::size_t kDescriptionPosts = 3;
inline constexpr std::size_t kDescriptionMaxChars = 500;
inline constexpr std::string_view kDescriptionSeparator = " — ";

/// Text of up to three supporting posts, newest first, joined and capped at
/// 500 code points. Empty when no post links to url.
inline std::string build_link_description(const std::string& url, const std::vector<SocialPost>& posts) {
  std::vector<const SocialPost*> supporting;
  for (const auto& p : posts)
    if (std::find(p.links.begin(), p.links.end(), url) != p.links.end()) supporting.push_back(&p);
  std::sort(supporting.begin(), supporting.end(), [](const SocialPost* a, const SocialPost* b) {
    if (a->timestamp != b->timestamp) return a->timestamp > b->timestamp;
    return a->id < b->id;
  });
  std::string out;
  for (std::size_t i = 0; i < supporting.size() && i < kDescriptionPosts; ++i) {
    if (i > 0) out += kDescriptionSeparator;
    out += supporting[i]->text;
  }
  return text::truncate_code_points(out, kDescriptionMaxChars);
}

/// One entry per distinct link, ordered by the number of posts carrying it
/// (descending) and then by URL.
inline std::vector<RankedLink> extract_links_ranked(const std::vector<SocialPost>& posts) {
  std::map<std::string, std::vector<std::string>> support;
  for (const auto& p : posts) {
    std::vector<std::string_view> seen;
    for (const auto& link : p.links) {
      if (std::find(seen.begin(), seen.end(), link) != seen.end()) continue;
      seen.push_back(link);
      support[link].push_back(p.id);
    }
  }
  std::vector<RankedLink> ranked;
  ranked.reserve(support.size());
  for (auto& [url, ids] : support) {
    std::sort(ids.begin(), ids.end());
    RankedLink link;
    link.url = url;
    link.frequency = static_cast<int>(ids.size());
    link.supporting_post_ids = std::move(ids);
    link.description = build_link_description(url, posts);
    ranked.push_back(std::move(link));
  }
  std::stable_sort(ranked.begin(), ranked.end(), [](const RankedLink& a, const RankedLink& b) {
    if (a.frequency != b.frequency) return a.frequency > b.frequency;
    return a.url < b.url;
  });
  return ranked;
}

/// Proposed keywords: each tag with the number of distinct posts using it.
inline std::vector<TagCount> extract_hashtags(const std::vector<SocialPost>& posts) {
  std::map<std::string, int> counts;
  for (const auto& p : posts) {
    std::vector<std::string> seen;
    for (const auto& raw : p.hashtags) {
      auto tag = text::to_lower(raw);
      if (std::find(seen.begin(), seen.end(), tag) != seen.end()) continue;
      seen.push_back(tag);
      ++counts[tag];
    }
  }
  std::vector<TagCount> out;
  for (const auto& [tag, n] : counts) out.push_back({tag, n});
  std::stable_sort(out.begin(), out.end(),
                   [](const TagCount& a, const TagCount& b) { return a.frequency > b.frequency; });
  return out;
}

}  // namespace seedwizard
