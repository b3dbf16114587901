#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "seedwizard/error.hpp"
#include "seedwizard/text.hpp"

namespace seedwizard {

/// Pieces of an absolute http(s) URL. authority keeps userinfo and port.
struct Url {
  std::string scheme;
  std::string authority;
  std::string host;
  std::string path;
  std::string query;     // without '?'
  std::string fragment;  // without '#'
  bool has_query = false;
  bool has_fragment = false;

  std::string origin() const { return scheme + "://" + authority; }
  std::string path_and_query() const {
    std::string out = path.empty() ? "/" : path;
    if (has_query) out += "?" + query;
    return out;
  }
};

namespace url_detail {

inline bool is_unreserved(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' ||
         c == '.' || c == '_' || c == '~';
}

inline bool is_sub_delim(char c) {
  switch (c) {
    case '!': case '$': case '&': case '\'': case '(': case ')':
    case '*': case '+': case ',': case ';': case '=':
      return true;
    default:
      return false;
  }
}

inline bool is_hex(char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}

}  // namespace url_detail

/// Characters that may appear anywhere in a URI reference (RFC 3986 unreserved,
/// reserved and '%').
inline bool is_uri_char(char c) {
  return url_detail::is_unreserved(c) || url_detail::is_sub_delim(c) || c == ':' || c == '/' ||
         c == '?' || c == '#' || c == '[' || c == ']' || c == '@' || c == '%';
}

inline std::optional<Url> parse_http_url(std::string_view s) {
  using namespace url_detail;
  const auto sep = s.find("://");
  if (sep == std::string_view::npos) return std::nullopt;
  Url url;
  url.scheme = text::to_lower(s.substr(0, sep));
  if (url.scheme != "http" && url.scheme != "https") return std::nullopt;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (!is_uri_char(c)) return std::nullopt;
    if (c == '%' && (i + 2 >= s.size() || !is_hex(s[i + 1]) || !is_hex(s[i + 2]))) return std::nullopt;
  }
  std::string_view rest = s.substr(sep + 3);
  const auto auth_end = rest.find_first_of("/?#");
  url.authority = std::string(rest.substr(0, auth_end));
  rest = auth_end == std::string_view::npos ? std::string_view{} : rest.substr(auth_end);

  std::string_view host = url.authority;
  if (const auto at = host.rfind('@'); at != std::string_view::npos) host = host.substr(at + 1);
  if (!host.empty() && host.front() == '[') {
    const auto close = host.find(']');
    if (close == std::string_view::npos) return std::nullopt;
    const auto after = host.substr(close + 1);
    if (!after.empty() && after.front() != ':') return std::nullopt;
    host = host.substr(0, close + 1);
  } else if (const auto colon = host.find(':'); colon != std::string_view::npos) {
    for (char c : host.substr(colon + 1))
      if (c < '0' || c > '9') return std::nullopt;
    host = host.substr(0, colon);
  }
  if (host.empty()) return std::nullopt;
  for (char c : host)
    if (c == '/' || c == '?' || c == '#' || c == '@') return std::nullopt;
  url.host = std::string(host);

  if (const auto hash = rest.find('#'); hash != std::string_view::npos) {
    url.fragment = std::string(rest.substr(hash + 1));
    url.has_fragment = true;
    rest = rest.substr(0, hash);
  }
  if (const auto q = rest.find('?'); q != std::string_view::npos) {
    url.query = std::string(rest.substr(q + 1));
    url.has_query = true;
    rest = rest.substr(0, q);
  }
  url.path = std::string(rest);
  return url;
}

inline bool is_absolute_http_url(std::string_view s) { return parse_http_url(s).has_value(); }

/// Canonical form used for identity: scheme and host lowercased, fragment
/// dropped, and "http://host/" reduced to "http://host".
inline std::string normalize_url(std::string_view s, const std::string& field = "url") {
  auto parsed = parse_http_url(text::trim(s));
  if (!parsed) throw ValidationError(field, "not an absolute http(s) URL: '" + std::string(s) + "'");
  const Url& u = *parsed;
  std::string authority = u.authority;
  const auto at = authority.rfind('@');
  const std::size_t host_at = at == std::string::npos ? 0 : at + 1;
  authority.replace(host_at, u.host.size(), text::to_lower(u.host));
  std::string out = u.scheme + "://" + authority;
  if (u.path != "/" || u.has_query) out += u.path;
  if (u.has_query) out += "?" + u.query;
  return out;
}

}  // namespace seedwizard
