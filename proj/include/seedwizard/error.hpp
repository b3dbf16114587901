#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

namespace seedwizard {

enum class ErrorCode { validation, not_found, upstream_unavailable, corruption, internal };

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::validation: return "validation";
    case ErrorCode::not_found: return "not_found";
    case ErrorCode::upstream_unavailable: return "upstream_unavailable";
    case ErrorCode::corruption: return "corruption";
    case ErrorCode::internal: return "internal";
  }
  return "internal";
}

// Fixed mapping used by the HTTP boundary.
inline int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::validation: return 400;
    case ErrorCode::not_found: return 404;
    case ErrorCode::upstream_unavailable: return 502;
    case ErrorCode::corruption:
    case ErrorCode::internal: return 500;
  }
  return 500;
}

/// Base of every error the library raises on purpose. Carries a code from the
/// fixed taxonomy plus optional structured detail (field names, causes).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, nlohmann::json detail = nullptr)
      : std::runtime_error(message), code_(code), detail_(std::move(detail)) {}

  ErrorCode code() const noexcept { return code_; }
  const nlohmann::json& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  nlohmann::json detail_;
};

class ValidationError : public Error {
 public:
  ValidationError(const std::string& field, const std::string& message)
      : Error(ErrorCode::validation, field + ": " + message,
              nlohmann::json{{"field", field}, {"reason", message}}),
        field_(field) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class NotFoundError : public Error {
 public:
  explicit NotFoundError(const std::string& what)
      : Error(ErrorCode::not_found, what + " not found") {}
};

class UpstreamUnavailable : public Error {
 public:
  explicit UpstreamUnavailable(const std::string& message, nlohmann::json detail = nullptr)
      : Error(ErrorCode::upstream_unavailable, message, std::move(detail)) {}
};

/// Raised when a stored record fails verification. event_id names the record.
class CorruptionError : public Error {
 public:
  CorruptionError(std::uint64_t event_id, const std::string& message)
      : Error(ErrorCode::corruption, message, nlohmann::json{{"event_id", event_id}}),
        event_id_(event_id) {}

  std::uint64_t event_id() const noexcept { return event_id_; }

 private:
  std::uint64_t event_id_;
};

class StorageError : public Error {
 public:
  explicit StorageError(const std::string& message) : Error(ErrorCode::internal, message) {}
};

}  // namespace seedwizard
