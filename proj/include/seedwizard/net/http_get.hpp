#pragma once

#include <chrono>
#include <limits>
#include <string>

#include <httplib.h>

#include "seedwizard/url.hpp"

namespace seedwizard::net {

struct GetOptions {
  std::chrono::milliseconds timeout{std::chrono::seconds{10}};
  std::string user_agent = "seedwizard/0.1";
  httplib::Headers headers;
  std::size_t max_body_bytes = std::numeric_limits<std::size_t>::max();
};

struct GetResult {
  bool transport_ok = false;  // false: DNS, connect, TLS or timeout failure
  std::string error;
  int status = 0;
  httplib::Headers headers;
  std::string body;
  bool truncated = false;

  std::string header(const std::string& name) const {
    const auto it = headers.find(name);
    return it == headers.end() ? std::string{} : it->second;
  }
};

/// One GET without redirect following. Bodies beyond max_body_bytes are cut
/// and flagged rather than failing the request.
inline GetResult http_get(const Url& url, const GetOptions& options) {
  GetResult result;
  httplib::Client client(url.origin());
  if (!client.is_valid()) {
    result.error = "unsupported scheme or origin: " + url.origin();
    return result;
  }
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(options.timeout);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(options.timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());
  client.set_follow_location(false);

  httplib::Headers headers = options.headers;
  headers.emplace("User-Agent", options.user_agent);

  auto res = client.Get(
      url.path_and_query(), headers,
      [&](const httplib::Response& response) {
        result.status = response.status;
        result.headers = response.headers;
        return true;
      },
      [&](const char* data, std::size_t length) {
        const std::size_t room = options.max_body_bytes - result.body.size();
        if (length > room) {
          result.body.append(data, room);
          result.truncated = true;
          return false;
        }
        result.body.append(data, length);
        return true;
      });
  if (res) {
    result.transport_ok = true;
    result.status = res->status;
  } else if (result.truncated && result.status != 0) {
    result.transport_ok = true;
  } else {
    result.error = httplib::to_string(res.error());
  }
  return result;
}

}  // namespace seedwizard::net
