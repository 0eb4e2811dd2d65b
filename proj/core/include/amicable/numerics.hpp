#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "amicable/natural.hpp"

namespace amicable::numerics {

/// Thrown when a cofactor resists factoring within the configured budget.
/// Reported as a failure; a partial factorization is never returned.
class FactorizationBudgetExceeded : public std::runtime_error {
 public:
  FactorizationBudgetExceeded(const std::string& what, Natural cofactor)
      : std::runtime_error(what), cofactor_(std::move(cofactor)) {}
  const Natural& cofactor() const noexcept { return cofactor_; }

 private:
  Natural cofactor_;
};

struct PrimePower {
  Natural prime;
  unsigned exponent = 1;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct FactorOptions {
  /// Primes below this are stripped by trial division before rho starts.
  std::uint32_t trial_bound = 1u << 16;
  /// Total Pollard-Brent iterations allowed across all cofactors.
  std::uint64_t rho_iteration_budget = 1ull << 24;
};

class Factorization;
Factorization factorize(const Natural& n, const FactorOptions& options);

/// Complete prime factorization, primes strictly increasing.
class Factorization {
 public:
  Factorization() = default;  // the empty product, i.e. 1

  /// Builds from prime powers the caller vouches for. Entries are sorted
  /// and equal primes merged; a non-prime entry throws DomainError.
  static Factorization from_prime_powers(std::vector<PrimePower> powers);

  /// As from_prime_powers, without re-testing the primes. For callers that
  /// already hold a primality proof for every entry.
  static Factorization from_certified_prime_powers(std::vector<PrimePower> powers);

  std::span<const PrimePower> factors() const noexcept { return factors_; }
  bool empty() const noexcept { return factors_.empty(); }

  /// Product of prime^exponent.
  Natural value() const;

  friend bool operator==(const Factorization&, const Factorization&) = default;

 private:
  friend Factorization factorize(const Natural&, const FactorOptions&);
  std::vector<PrimePower> factors_;
};

/// Default cap for the brute-force oracle.
inline constexpr std::uint64_t kOracleBound = 100'000'000;

/// Below this bound Miller-Rabin with the first 13 prime bases is a proof
/// (Sorenson and Webster, 2015).
inline const Natural& deterministic_mr_bound() {
  static const Natural bound = Natural::from_decimal("3317044064679887385961981");
  return bound;
}

/// Strong probable-prime test to a single base. n must be odd and > 2.
bool is_strong_probable_prime(const Natural& n, const Natural& base);

/// Primality check used to certify factorization entries: a proof below
/// deterministic_mr_bound(), 32 fixed-base rounds above it.
bool is_prime_for_factoring(const Natural& n);

/// Primes up to and including `limit`, by the sieve of Eratosthenes.
/// Repeated calls with the same limit share storage.
std::span<const std::uint32_t> primes_up_to(std::uint32_t limit);

Factorization factorize(const Natural& n, const FactorOptions& options = {});

/// sigma_1: the sum of all divisors, from the multiplicative closed form.
Natural sigma_total(const Factorization& f);

/// Sum of the divisors of n strictly below n. sigma_proper(1) == 0.
Natural sigma_proper(const Natural& n, const FactorOptions& options = {});
Natural sigma_proper(const Factorization& f);

/// Same contract as sigma_proper, by enumerating d <= sqrt(n). Shares no
/// code with factorize; it exists to cross-check it.
Natural sigma_proper_bruteforce(const Natural& n, std::uint64_t bound = kOracleBound);

/// Sorted divisors strictly below n.
std::vector<Natural> divisors_proper(const Natural& n, const FactorOptions& options = {});
std::vector<Natural> divisors_proper(const Factorization& f);

}  // namespace amicable::numerics
