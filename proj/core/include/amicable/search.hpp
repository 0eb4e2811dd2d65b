#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "amicable/cache.hpp"
#include "amicable/catalog.hpp"
#include "amicable/primality.hpp"
#include "amicable/sequences.hpp"

namespace amicable::search {

using sequences::Index;

/// Three-valued truth for table cells. Unresolved is never coerced to False.
enum class Tri { True, False, Unresolved };

/// "T", "F" or "unresolved".
std::string_view to_string(Tri t);
Tri tri_from_string(std::string_view token);

/// How a scan row relates to the published table.
enum class Resolution {
  Reproduced,   // decided with every value inside the full-test cap
  Consistent,   // decided by a factor found beyond the full-test cap; agrees with the table
  Unresolved,   // not decided at this budget
  Disagrees,    // decided, and differs from the published cell
};

std::string_view to_string(Resolution r);
Resolution resolution_from_string(std::string_view token);

/// One row of the Mersenne-catalog scan: n = p - 1 for a catalog exponent p.
struct ScanRecord {
  Index n = 0;
  std::uint64_t exponent = 0;  // p, so m_{n+1} = 2^p - 1
  primality::Verdict m_next;
  primality::Verdict a;
  primality::Verdict b;
  /// Present only when m_{n+1}, a_n and b_n all count as prime.
  std::optional<primality::Verdict> c;
  Tri combined_ab = Tri::Unresolved;
  /// n > 1, m_{n+1}, a_n, b_n prime and c_n composite.
  bool counterexample_candidate = false;
  Tri published_ab = Tri::False;
  Resolution resolution = Resolution::Unresolved;
  std::optional<std::int64_t> timestamp;

  friend bool operator==(const ScanRecord&, const ScanRecord&) = default;
};

/// One row of the Fermat scan: alpha = 2^n + 1, beta = 2^(n+1) + 3, gamma = 2^n + 3.
struct FermatScanRecord {
  Index n = 0;
  primality::Verdict alpha;
  primality::Verdict beta;
  primality::Verdict gamma;
  Tri alpha_prime = Tri::Unresolved;
  Tri beta_gamma = Tri::Unresolved;
  std::optional<Tri> published_alpha;
  std::optional<Tri> published_beta_gamma;
  Resolution resolution = Resolution::Unresolved;
  std::optional<std::int64_t> timestamp;

  friend bool operator==(const FermatScanRecord&, const FermatScanRecord&) = default;
};

struct ScanOptions {
  primality::Policy policy;
  /// Worker threads; 0 means std::thread::hardware_concurrency().
  unsigned jobs = 1;
  /// Optional shared memo; nullptr disables caching.
  ResultCache* cache = nullptr;
  /// m_{n+1} is re-proven by Lucas-Lehmer for p up to this, taken from the catalog above it.
  std::uint64_t mersenne_reprove_max_exponent = 4423;
  /// Stamp each record with clock(); off by default so output is reproducible.
  bool record_timestamps = false;
  /// Seconds since the epoch; defaults to the system clock.
  std::function<std::int64_t()> clock;
};

struct ScanSummary {
  std::size_t rows = 0;
  std::size_t reproduced = 0;
  std::size_t consistent = 0;
  std::size_t unresolved = 0;
  std::size_t disagreements = 0;
  std::size_t counterexamples = 0;
  std::size_t combined_true = 0;

  friend bool operator==(const ScanSummary&, const ScanSummary&) = default;
};

/// Published a_n and b_n cell: T exactly at n = 1, 2, 4.
Tri published_table3_ab(Index n);

/// Primality of 3*2^n - 1 (k = 3) or 9*2^n - 1 (k = 9) by the cheap-first
/// cascade: cache, mod-4 shortcut, exact test for values under 64 bits,
/// small-factor sieve, then the proving test within the policy cap.
/// Decided and probable results are written back to the cache.
primality::Verdict cascade_riesel(std::uint64_t k, std::uint64_t n, const ScanOptions& options);

/// Evaluates every catalog row; records are returned in catalog order
/// regardless of jobs.
std::vector<ScanRecord> scan_conjecture1(const MersenneCatalog& catalog,
                                         const ScanOptions& options = {});

/// Evaluates n = 2, 4, 8, ... up to max_n.
std::vector<FermatScanRecord> scan_conjecture2(Index max_n = 16, const ScanOptions& options = {});

ScanSummary summarize(const std::vector<ScanRecord>& records);
ScanSummary summarize(const std::vector<FermatScanRecord>& records);

}  // namespace amicable::search
