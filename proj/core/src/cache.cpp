#include "amicable/cache.hpp"

#include <mutex>
#include <sstream>
#include <vector>

namespace amicable::search {

namespace {

using primality::Status;
using primality::Verdict;

int strength(Status s) {
  switch (s) {
    case Status::ProvenPrime:
    case Status::Composite: return 2;
    case Status::ProbablePrime: return 1;
    case Status::Unresolved: return 0;
  }
  return 0;
}

std::string encode(std::string_view text) {
  if (text == "-") return "%2D";
  if (text.empty()) return "%";  // a lone '%' never arises from the escapes below
  std::string out;
  for (char ch : text) {
    switch (ch) {
      case '%': out += "%25"; break;
      case ' ': out += "%20"; break;
      case '\t': out += "%09"; break;
      case '\n': out += "%0A"; break;
      case '\r': out += "%0D"; break;
      default: out += ch;
    }
  }
  return out;
}

std::optional<std::string> decode(std::string_view token) {
  if (token == "%") return std::string();
  std::string out;
  for (std::size_t i = 0; i < token.size(); ++i) {
    if (token[i] != '%') {
      out += token[i];
      continue;
    }
    if (i + 2 >= token.size()) return std::nullopt;
    const std::string hex(token.substr(i + 1, 2));
    char* end = nullptr;
    const long v = std::strtol(hex.c_str(), &end, 16);
    if (end != hex.c_str() + 2) return std::nullopt;
    out += static_cast<char>(v);
    i += 2;
  }
  return out;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::size_t key_arity(std::string_view kind) {
  if (kind == "riesel") return 3;
  if (kind == "generic" || kind == "mersenne" || kind == "fermat") return 2;
  return 0;
}

}  // namespace

std::uint64_t fnv1a64(std::string_view data) noexcept {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

std::string ResultCache::format_line(const primality::FormDescriptor& key,
                                     const CacheEntry& entry) {
  const Verdict& v = entry.verdict;
  std::string body = key.key();
  body += ' ';
  body += primality::to_string(v.status);
  body += ' ' + encode(v.method);
  body += ' ' + (v.witness ? v.witness->to_string() : std::string("-"));
  body += ' ' + (v.rounds ? std::to_string(*v.rounds) : std::string("-"));
  body += ' ' + (v.reason ? encode(*v.reason) : std::string("-"));
  body += ' ' + std::to_string(entry.timestamp);
  return body + ' ' + std::to_string(fnv1a64(body));
}

std::optional<std::pair<primality::FormDescriptor, CacheEntry>> ResultCache::parse_line(
    std::string_view line) {
  while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
  const auto last_space = line.rfind(' ');
  if (last_space == std::string_view::npos) return std::nullopt;
  const std::string_view body = line.substr(0, last_space);
  const std::string checksum(line.substr(last_space + 1));
  if (checksum != std::to_string(fnv1a64(body))) return std::nullopt;

  const auto tokens = split_ws(body);
  if (tokens.empty()) return std::nullopt;
  const std::size_t arity = key_arity(tokens[0]);
  if (arity == 0 || tokens.size() != arity + 6) return std::nullopt;
  try {
    std::string key_text;
    for (std::size_t i = 0; i < arity; ++i) key_text += (i ? " " : "") + std::string(tokens[i]);
    auto key = primality::FormDescriptor::from_key(key_text);

    CacheEntry entry;
    Verdict& v = entry.verdict;
    v.status = primality::status_from_string(tokens[arity]);
    auto method = decode(tokens[arity + 1]);
    if (!method) return std::nullopt;
    v.method = *method;
    if (tokens[arity + 2] != "-") v.witness = Natural::from_decimal(tokens[arity + 2]);
    if (tokens[arity + 3] != "-") {
      v.rounds = static_cast<unsigned>(Natural::from_decimal(tokens[arity + 3]).to_u64());
    }
    if (tokens[arity + 4] != "-") {
      auto reason = decode(tokens[arity + 4]);
      if (!reason) return std::nullopt;
      v.reason = *reason;
    }
    entry.timestamp = static_cast<std::int64_t>(Natural::from_decimal(tokens[arity + 5]).to_u64());
    return std::make_pair(std::move(key), std::move(entry));
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

ResultCache::ResultCache(std::filesystem::path path) : path_(std::move(path)) {
  if (std::filesystem::exists(*path_)) {
    std::ifstream in(*path_, std::ios::binary);
    if (!in) throw CacheIoError("cannot read cache file '" + path_->string() + "'");
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      auto parsed = parse_line(line);
      if (!parsed) {
        ++corrupt_lines_;
        continue;
      }
      apply(parsed->first.key(), parsed->second);
    }
  }
  log_.open(*path_, std::ios::binary | std::ios::app);
  if (!log_) throw CacheIoError("cannot open cache file '" + path_->string() + "' for append");
}

PutOutcome ResultCache::apply(const std::string& key, const CacheEntry& entry) {
  auto it = entries_.find(key);
  if (it == entries_.end()) {
    entries_.emplace(key, std::make_pair(primality::FormDescriptor::from_key(key), entry));
    return PutOutcome::Inserted;
  }
  CacheEntry& existing = it->second.second;
  const int old_strength = strength(existing.verdict.status);
  const int new_strength = strength(entry.verdict.status);
  if (new_strength > old_strength) {
    existing = entry;
    return PutOutcome::Upgraded;
  }
  if (old_strength == 2 && new_strength == 2 && existing.verdict.status != entry.verdict.status) {
    return PutOutcome::Conflict;
  }
  return PutOutcome::Retained;
}

std::optional<CacheEntry> ResultCache::get(const primality::FormDescriptor& key) const {
  std::shared_lock lock(mutex_);
  auto it = entries_.find(key.key());
  if (it == entries_.end()) return std::nullopt;
  return it->second.second;
}

PutOutcome ResultCache::put(const primality::FormDescriptor& key,
                            const primality::Verdict& verdict, std::int64_t timestamp) {
  if (verdict.status == Status::Unresolved) return PutOutcome::Retained;
  const CacheEntry entry{verdict, timestamp};
  std::unique_lock lock(mutex_);
  const PutOutcome outcome = apply(key.key(), entry);
  if (path_ && (outcome == PutOutcome::Inserted || outcome == PutOutcome::Upgraded)) {
    log_ << format_line(key, entry) << '\n';
    log_.flush();
    if (!log_) throw CacheIoError("write to cache file '" + path_->string() + "' failed");
  }
  return outcome;
}

std::size_t ResultCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

}  // namespace amicable::search
