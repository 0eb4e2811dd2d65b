#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>

#include "amicable/primality.hpp"

namespace amicable::search {

class CacheIoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CacheEntry {
  primality::Verdict verdict;
  std::int64_t timestamp = 0;  // seconds since the Unix epoch
};

enum class PutOutcome {
  Inserted,  // new key
  Upgraded,  // replaced a ProbablePrime by a decided verdict
  Retained,  // existing entry at least as strong; nothing written
  Conflict,  // decided entry disagrees with the new decided verdict; kept the old one
};

/// Persistent memo of primality verdicts keyed by FormDescriptor.
///
/// Backed by an append-only text log (format in docs/cache-format.md). A
/// ProvenPrime or Composite entry is never replaced; ProbablePrime may be
/// upgraded. Unresolved verdicts are not stored. Lines whose checksum does
/// not match are skipped on load and counted in corrupt_lines().
///
/// Reads take a shared lock, writes an exclusive one, so a single instance
/// can serve concurrent scan workers.
class ResultCache {
 public:
  /// In-memory only.
  ResultCache() = default;
  /// Loads `path` if it exists and appends every accepted put to it.
  explicit ResultCache(std::filesystem::path path);

  ResultCache(const ResultCache&) = delete;
  ResultCache& operator=(const ResultCache&) = delete;

  std::optional<CacheEntry> get(const primality::FormDescriptor& key) const;
  PutOutcome put(const primality::FormDescriptor& key, const primality::Verdict& verdict,
                 std::int64_t timestamp);

  std::size_t size() const;
  std::size_t corrupt_lines() const noexcept { return corrupt_lines_; }

  /// One log line for the entry, checksum included, without the newline.
  static std::string format_line(const primality::FormDescriptor& key, const CacheEntry& entry);
  /// Parses a log line; nullopt when malformed or the checksum is wrong.
  static std::optional<std::pair<primality::FormDescriptor, CacheEntry>> parse_line(
      std::string_view line);

 private:
  PutOutcome apply(const std::string& key, const CacheEntry& entry);

  mutable std::shared_mutex mutex_;
  std::map<std::string, std::pair<primality::FormDescriptor, CacheEntry>> entries_;
  std::optional<std::filesystem::path> path_;
  std::ofstream log_;
  std::size_t corrupt_lines_ = 0;
};

/// 64-bit FNV-1a, the per-line checksum of the cache log.
std::uint64_t fnv1a64(std::string_view data) noexcept;

}  // namespace amicable::search
