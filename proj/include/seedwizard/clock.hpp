#pragma once

#include <atomic>
#include <chrono>
#include <cstdio>
#include <string>
#include <string_view>

#include "seedwizard/error.hpp"

namespace seedwizard {

/// UTC instant at second resolution; everything persisted or exported uses it.
using Instant = std::chrono::sys_seconds;

class Clock {
 public:
  virtual ~Clock() = default;
  virtual Instant now() const = 0;
};

class SystemClock final : public Clock {
 public:
  Instant now() const override {
    return std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
  }
};

/// Test clock. Starts at a fixed instant and only moves when told to.
class ManualClock final : public Clock {
 public:
  explicit ManualClock(Instant start = Instant{std::chrono::seconds{1412121600}})
      : seconds_(start.time_since_epoch().count()) {}

  Instant now() const override { return Instant{std::chrono::seconds{seconds_.load()}}; }
  void set(Instant at) { seconds_ = at.time_since_epoch().count(); }
  void advance(std::chrono::seconds by) { seconds_ += by.count(); }

 private:
  std::atomic<std::int64_t> seconds_;
};

/// "YYYY-MM-DDTHH:MM:SSZ"
inline std::string to_iso8601(Instant at) {
  using namespace std::chrono;
  const auto day = floor<days>(at);
  const year_month_day ymd{day};
  const hh_mm_ss hms{at - day};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", int(ymd.year()),
                unsigned(ymd.month()), unsigned(ymd.day()), int(hms.hours().count()),
                int(hms.minutes().count()), int(hms.seconds().count()));
  return buf;
}

/// Accepts "YYYY-MM-DDTHH:MM:SS" followed by "Z", "+00:00", or a numeric
/// offset, with optional fractional seconds (dropped).
inline Instant parse_iso8601(std::string_view text, const std::string& field = "timestamp") {
  using namespace std::chrono;
  const std::string s(text);
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, se = 0, consumed = 0;
  if (std::sscanf(s.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%n", &y, &mo, &d, &h, &mi, &se, &consumed) != 6 ||
      consumed != 19) {
    throw ValidationError(field, "not an ISO-8601 timestamp: '" + s + "'");
  }
  std::size_t pos = 19;
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
  }
  seconds offset{0};
  const std::string rest = s.substr(pos);
  if (rest == "Z" || rest == "z") {
  } else if (rest.size() == 6 && (rest[0] == '+' || rest[0] == '-') && rest[3] == ':') {
    int oh = 0, om = 0;
    if (std::sscanf(rest.c_str() + 1, "%2d:%2d", &oh, &om) != 2) {
      throw ValidationError(field, "bad UTC offset in '" + s + "'");
    }
    offset = hours{oh} + minutes{om};
    if (rest[0] == '-') offset = -offset;
  } else {
    throw ValidationError(field, "timestamp must carry a UTC designator: '" + s + "'");
  }
  const year_month_day ymd{year{y}, month{unsigned(mo)}, day{unsigned(d)}};
  if (!ymd.ok() || h > 23 || mi > 59 || se > 60) {
    throw ValidationError(field, "timestamp out of range: '" + s + "'");
  }
  return sys_days{ymd} + hours{h} + minutes{mi} + seconds{se} - offset;
}

}  // namespace seedwizard
