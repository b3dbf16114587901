#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "seedwizard/federation/types.hpp"
#include "seedwizard/url.hpp"

namespace seedwizard {

/// Byte span [begin, end) of a URL found in post text, plus its raw spelling.
struct UrlSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::string raw;
};

namespace post_detail {

inline bool is_word_byte(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

inline bool starts_with_ci(std::string_view s, std::size_t pos, std::string_view prefix) {
  return s.size() - pos >= prefix.size() && text::iequals_ascii(s.substr(pos, prefix.size()), prefix);
}

}  // namespace post_detail

/// Finds absolute http(s) URLs in free text. A URL starts at "http://" or
/// "https://" not glued to a preceding word character and runs over URI
/// characters; trailing sentence punctuation (and an unbalanced ')') is not
/// part of it.
inline std::vector<UrlSpan> find_urls(std::string_view s) {
  using post_detail::starts_with_ci;
  std::vector<UrlSpan> spans;
  std::size_t i = 0;
  while (i < s.size()) {
    const bool boundary = i == 0 || !post_detail::is_word_byte(s[i - 1]);
    if (!boundary || !(starts_with_ci(s, i, "http://") || starts_with_ci(s, i, "https://"))) {
      ++i;
      continue;
    }
    std::size_t end = i;
    while (end < s.size() && is_uri_char(s[end])) ++end;
    while (end > i) {
      const char last = s[end - 1];
      if (last == '.' || last == ',' || last == ';' || last == ':' || last == '!' || last == '?' ||
          last == '\'' || last == '"') {
        --end;
        continue;
      }
      if (last == ')') {
        const auto body = s.substr(i, end - i);
        if (std::count(body.begin(), body.end(), '(') < std::count(body.begin(), body.end(), ')')) {
          --end;
          continue;
        }
      }
      break;
    }
    const auto raw = s.substr(i, end - i);
    if (is_absolute_http_url(raw)) {
      spans.push_back({i, end, std::string(raw)});
      i = end;
    } else {
      i += 4;
    }
  }
  return spans;
}

/// Normalized, per-post deduplicated links in order of first appearance.
inline std::vector<std::string> extract_post_links(std::string_view s) {
  std::vector<std::string> links;
  for (const auto& span : find_urls(s)) {
    auto url = normalize_url(span.raw);
    if (std::find(links.begin(), links.end(), url) == links.end()) links.push_back(std::move(url));
  }
  return links;
}

/// Hashtags per the grammar '#' [A-Za-z][A-Za-z0-9_]*, lowercased and
/// deduplicated. '#' inside a URL (a fragment) is not a hashtag.
inline std::vector<std::string> extract_post_hashtags(std::string_view s) {
  const auto urls = find_urls(s);
  auto inside_url = [&](std::size_t pos) {
    for (const auto& u : urls)
      if (pos >= u.begin && pos < u.end) return true;
    return false;
  };
  auto is_alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); };
  std::vector<std::string> tags;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    if (s[i] != '#' || !is_alpha(s[i + 1]) || inside_url(i)) continue;
    std::size_t end = i + 1;
    while (end < s.size() && post_detail::is_word_byte(s[end])) ++end;
    std::string tag = text::to_lower(s.substr(i + 1, end - i - 1));
    if (std::find(tags.begin(), tags.end(), tag) == tags.end()) tags.push_back(std::move(tag));
    i = end - 1;
  }
  return tags;
}

/// Builds a post with links and hashtags derived from its text.
inline SocialPost make_post(std::string id, std::string post_text, std::string author, Instant timestamp) {
  SocialPost post;
  post.id = std::move(id);
  post.text = std::move(post_text);
  post.author = std::move(author);
  post.timestamp = timestamp;
  post.links = extract_post_links(post.text);
  post.hashtags = extract_post_hashtags(post.text);
  return post;
}

}  // namespace seedwizard
