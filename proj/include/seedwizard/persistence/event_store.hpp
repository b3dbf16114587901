#pragma once

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>
#include <zlib.h>

#include <algorithm>
#include <cerrno>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "seedwizard/spec/model.hpp"

namespace seedwizard {

// Record wire format, all integers big-endian:
//   u32 payload length | u32 CRC-32 of payload | payload (event JSON)
inline constexpr std::size_t kRecordHeaderBytes = 8;
// Larger lengths can only come from a damaged header.
inline constexpr std::uint32_t kMaxRecordBytes = 1u << 24;

inline std::uint32_t crc32_of(std::string_view bytes) {
  return static_cast<std::uint32_t>(
      ::crc32(0L, reinterpret_cast<const Bytef*>(bytes.data()), static_cast<uInt>(bytes.size())));
}

namespace store_detail {

inline void put_u32(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>(v >> 24));
  out.push_back(static_cast<char>(v >> 16));
  out.push_back(static_cast<char>(v >> 8));
  out.push_back(static_cast<char>(v));
}

inline std::uint32_t get_u32(std::string_view s, std::size_t pos) {
  return (std::uint32_t(static_cast<unsigned char>(s[pos])) << 24) |
         (std::uint32_t(static_cast<unsigned char>(s[pos + 1])) << 16) |
         (std::uint32_t(static_cast<unsigned char>(s[pos + 2])) << 8) |
         std::uint32_t(static_cast<unsigned char>(s[pos + 3]));
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return {};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_all(int fd, std::string_view bytes, const std::string& what) {
  while (!bytes.empty()) {
    const auto n = ::write(fd, bytes.data(), bytes.size());
    if (n < 0) {
      if (errno == EINTR) continue;
      throw StorageError("write to " + what + " failed: " + std::strerror(errno));
    }
    bytes.remove_prefix(static_cast<std::size_t>(n));
  }
}

inline bool valid_spec_id(std::string_view id) {
  if (id.empty() || id.size() > 64) return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' || c == '_';
  });
}

}  // namespace store_detail

inline std::string encode_record(std::string_view payload) {
  std::string out;
  out.reserve(kRecordHeaderBytes + payload.size());
  store_detail::put_u32(out, static_cast<std::uint32_t>(payload.size()));
  store_detail::put_u32(out, crc32_of(payload));
  out.append(payload);
  return out;
}

struct EventRecord {
  std::string spec_id;
  std::uint64_t event_id = 0;
  Instant at{};
  std::string payload;  // serialized SpecEvent
  std::uint32_t checksum = 0;
  SpecEvent event;
};

struct DecodedLog {
  std::vector<EventRecord> records;
  std::size_t valid_bytes = 0;  // length of the clean prefix
  bool partial_tail = false;    // bytes after valid_bytes form an incomplete record
};

/// Parses a whole log. The n-th record must carry event_id n. A complete
/// record whose checksum or content does not verify is a CorruptionError
/// naming that event id; an incomplete record at the end is reported as a
/// partial tail and left out.
inline DecodedLog decode_log(std::string_view bytes, const std::string& spec_id) {
  DecodedLog log;
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    const std::uint64_t expected_id = log.records.size() + 1;
    if (bytes.size() - pos < kRecordHeaderBytes) {
      log.partial_tail = true;
      break;
    }
    const auto length = store_detail::get_u32(bytes, pos);
    const auto checksum = store_detail::get_u32(bytes, pos + 4);
    if (length > kMaxRecordBytes)
      throw CorruptionError(expected_id, "impossible record length for event " + std::to_string(expected_id));
    if (bytes.size() - pos - kRecordHeaderBytes < length) {
      log.partial_tail = true;
      break;
    }
    const auto payload = bytes.substr(pos + kRecordHeaderBytes, length);
    if (crc32_of(payload) != checksum)
      throw CorruptionError(expected_id, "checksum mismatch in record for event " + std::to_string(expected_id));
    EventRecord record;
    try {
      record.event = event_from_json(nlohmann::json::parse(payload));
    } catch (const std::exception& e) {
      throw CorruptionError(expected_id, "undecodable record for event " + std::to_string(expected_id) + ": " + e.what());
    }
    if (record.event.event_id != expected_id || record.event.spec_id != spec_id)
      throw CorruptionError(expected_id, "record out of sequence at event " + std::to_string(expected_id));
    record.spec_id = spec_id;
    record.event_id = expected_id;
    record.at = record.event.at;
    record.payload = std::string(payload);
    record.checksum = checksum;
    log.records.push_back(std::move(record));
    pos += kRecordHeaderBytes + length;
    log.valid_bytes = pos;
  }
  return log;
}

struct StoreOptions {
  // fsync after every append; off for bulk imports (call sync() afterwards).
  bool flush_each_append = true;
};

/// File-backed append-only event log per spec:
///   <data_dir>/<spec_id>/meta.json      name and creation time
///   <data_dir>/<spec_id>/events.log     checksummed records
///   <data_dir>/<spec_id>/snapshot.json  optional folded state
/// One writer per spec at a time (the repository serializes appends).
class EventStore {
 public:
  explicit EventStore(std::filesystem::path data_dir, StoreOptions options = {})
      : root_(std::move(data_dir)), options_(options) {
    std::error_code ec;
    std::filesystem::create_directories(root_, ec);
    if (ec) throw StorageError("cannot create data directory " + root_.string() + ": " + ec.message());
  }

  const std::filesystem::path& root() const { return root_; }

  void create_spec(const std::string& spec_id, const std::string& name, Instant created_at) {
    if (!store_detail::valid_spec_id(spec_id)) throw ValidationError("spec_id", "invalid identifier");
    const auto dir = root_ / spec_id;
    if (std::filesystem::exists(dir)) throw StorageError("spec directory already exists: " + dir.string());
    std::filesystem::create_directories(dir);
    nlohmann::ordered_json meta{{"spec_id", spec_id}, {"name", name}, {"created_at", to_iso8601(created_at)}};
    write_atomically(dir / "meta.json", meta.dump(2));
    std::lock_guard lock(mutex_);
    heads_[spec_id] = 0;
  }

  bool exists(const std::string& spec_id) const {
    return store_detail::valid_spec_id(spec_id) && std::filesystem::exists(root_ / spec_id / "meta.json");
  }

  std::vector<std::string> spec_ids() const {
    std::vector<std::string> ids;
    for (const auto& entry : std::filesystem::directory_iterator(root_))
      if (entry.is_directory() && std::filesystem::exists(entry.path() / "meta.json"))
        ids.push_back(entry.path().filename().string());
    std::sort(ids.begin(), ids.end());
    return ids;
  }

  std::string name_of(const std::string& spec_id) const {
    require(spec_id);
    try {
      return nlohmann::json::parse(store_detail::read_file(root_ / spec_id / "meta.json")).at("name").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw CorruptionError(0, "unreadable meta.json for " + spec_id + ": " + e.what());
    }
  }

  /// Id of the last durable event (0 for an empty log). The first call per
  /// spec drops an incomplete trailing record left by a crash.
  std::uint64_t head(const std::string& spec_id) {
    std::lock_guard lock(mutex_);
    return head_locked(spec_id);
  }

  /// Appends event as id head + 1 and returns that id. On a failed write
  /// the log is cut back and nothing is assigned.
  std::uint64_t append(const std::string& spec_id, SpecEvent& event) {
    std::lock_guard lock(mutex_);
    const auto id = head_locked(spec_id) + 1;
    SpecEvent stored = event;
    stored.event_id = id;
    stored.spec_id = spec_id;
    const auto payload = event_to_json(stored).dump();
    if (payload.size() > kMaxRecordBytes) throw ValidationError("payload", "event too large");
    const auto record = encode_record(payload);
    const auto path = log_path(spec_id);

    const int fd = ::open(path.c_str(), O_WRONLY | O_APPEND | O_CREAT | O_CLOEXEC, 0644);
    if (fd < 0) throw StorageError("cannot open " + path.string() + ": " + std::strerror(errno));
    struct stat st {};
    const bool sized = ::fstat(fd, &st) == 0;
    try {
      store_detail::write_all(fd, record, path.string());
      if (options_.flush_each_append && ::fsync(fd) != 0 && errno != EINVAL)
        throw StorageError("fsync of " + path.string() + " failed: " + std::strerror(errno));
    } catch (...) {
      if (sized && S_ISREG(st.st_mode) && ::ftruncate(fd, st.st_size) != 0) {
        // Leave the torn tail; the next open discards it.
      }
      ::close(fd);
      throw;
    }
    ::close(fd);
    heads_[spec_id] = id;
    event = std::move(stored);
    return id;
  }

  /// Records with event_id >= from_id, in order, checksums verified.
  std::vector<EventRecord> load_events(const std::string& spec_id, std::uint64_t from_id = 1) const {
    if (from_id < 1) throw ValidationError("from_id", "must be >= 1");
    require(spec_id);
    auto log = decode_log(store_detail::read_file(log_path(spec_id)), spec_id);
    std::vector<EventRecord> out;
    for (auto& r : log.records)
      if (r.event_id >= from_id) out.push_back(std::move(r));
    return out;
  }

  std::vector<SpecEvent> load_spec_events(const std::string& spec_id, std::uint64_t from_id = 1) const {
    std::vector<SpecEvent> events;
    for (auto& r : load_events(spec_id, from_id)) events.push_back(std::move(r.event));
    return events;
  }

  void snapshot(const std::string& spec_id, const CrawlSpecification& state) {
    require(spec_id);
    write_atomically(root_ / spec_id / "snapshot.json", spec_to_json(state).dump(2));
  }

  /// Stored snapshot, or nullopt when there is none or it cannot be read.
  std::optional<CrawlSpecification> load_snapshot(const std::string& spec_id) const {
    require(spec_id);
    const auto path = root_ / spec_id / "snapshot.json";
    if (!std::filesystem::exists(path)) return std::nullopt;
    try {
      auto state = spec_from_json(nlohmann::json::parse(store_detail::read_file(path)));
      if (state.spec_id != spec_id) return std::nullopt;
      return state;
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }

  /// Startup path: snapshot (if any) plus replay of the newer events.
  CrawlSpecification recover(const std::string& spec_id) {
    const auto head_id = head(spec_id);
    CrawlSpecification base;
    if (auto snap = load_snapshot(spec_id); snap && snap->version <= head_id) {
      base = std::move(*snap);
    } else {
      base.spec_id = spec_id;
      base.name = name_of(spec_id);
    }
    return replay(load_spec_events(spec_id, base.version + 1), std::move(base));
  }

  /// Flushes a spec's log to stable storage (for batching mode).
  void sync(const std::string& spec_id) const {
    const int fd = ::open(log_path(spec_id).c_str(), O_WRONLY | O_CLOEXEC);
    if (fd < 0) return;
    ::fsync(fd);
    ::close(fd);
  }

  std::filesystem::path log_path(const std::string& spec_id) const { return root_ / spec_id / "events.log"; }

 private:
  void require(const std::string& spec_id) const {
    if (!exists(spec_id)) throw NotFoundError("spec '" + spec_id + "'");
  }

  std::uint64_t head_locked(const std::string& spec_id) {
    if (const auto it = heads_.find(spec_id); it != heads_.end()) return it->second;
    require(spec_id);
    const auto path = log_path(spec_id);
    const auto bytes = store_detail::read_file(path);
    const auto log = decode_log(bytes, spec_id);
    if (log.partial_tail) std::filesystem::resize_file(path, log.valid_bytes);
    heads_[spec_id] = log.records.size();
    return log.records.size();
  }

  static void write_atomically(const std::filesystem::path& path, const std::string& content) {
    auto tmp = path;
    tmp += ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      out << content;
      out.flush();
      if (!out) throw StorageError("cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
  }

  std::filesystem::path root_;
  StoreOptions options_;
  std::mutex mutex_;
  std::map<std::string, std::uint64_t> heads_;
};

}  // namespace seedwizard
