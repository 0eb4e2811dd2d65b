#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "amicable/natural.hpp"

namespace amicable::primality {

enum class Status { ProvenPrime, Composite, ProbablePrime, Unresolved };

std::string_view to_string(Status s);
/// Inverse of to_string; throws DomainError on an unknown token.
Status status_from_string(std::string_view token);

/// Outcome of a primality query.
///
/// A witness factor is attached only when a composite was found by trial
/// division or sieving, and always satisfies 1 < witness < value with
/// witness | value. `rounds` is set only for randomized verdicts and
/// `reason` only for Unresolved results and the 0/1 convention.
struct Verdict {
  Status status = Status::Unresolved;
  std::string method;
  std::optional<Natural> witness;
  std::optional<unsigned> rounds;
  std::optional<std::string> reason;

  bool proven_prime() const noexcept { return status == Status::ProvenPrime; }
  bool composite() const noexcept { return status == Status::Composite; }
  /// ProvenPrime or Composite.
  bool decided() const noexcept { return proven_prime() || composite(); }
  /// Counts as prime for a rule condition; ProbablePrime only when relaxed.
  bool counts_as_prime(bool accept_probable) const noexcept {
    return proven_prime() || (accept_probable && status == Status::ProbablePrime);
  }

  friend bool operator==(const Verdict&, const Verdict&) = default;

  static Verdict proven(std::string method);
  static Verdict composite_by(std::string method, std::optional<Natural> witness = std::nullopt);
  static Verdict probable(std::string method, unsigned rounds);
  static Verdict unresolved(std::string method, std::string reason);
};

enum class FormKind { Generic, KTwoNMinus1, Mersenne, FermatForm };

std::string_view to_string(FormKind k);

/// How a value is written, so it can be routed to a form-specific test.
/// Values: Generic(v) = v; KTwoNMinus1(k, n) = k*2^n - 1; Mersenne(p) = 2^p - 1;
/// FermatForm(k) = 2^(2^k) + 1.
class FormDescriptor {
 public:
  static FormDescriptor generic(Natural value);
  static FormDescriptor k_two_n_minus_1(std::uint64_t k, std::uint64_t n);
  static FormDescriptor mersenne(std::uint64_t p);
  static FormDescriptor fermat(std::uint64_t k);

  FormKind kind() const noexcept { return kind_; }
  std::uint64_t k() const noexcept { return k_; }
  std::uint64_t exponent() const noexcept { return exponent_; }
  const Natural& generic_value() const noexcept { return generic_; }

  /// Reconstructs the described value exactly.
  Natural value() const;
  /// Upper bound on the bit length without materializing the value.
  std::uint64_t bit_length_estimate() const;
  /// Human-readable expression, e.g. "3*2^4421 - 1".
  std::string expression() const;
  /// Whitespace-separated key, e.g. "riesel 3 4421". Used by the result cache.
  std::string key() const;
  /// Inverse of key(); throws DomainError on malformed input.
  static FormDescriptor from_key(std::string_view key);

  friend bool operator==(const FormDescriptor&, const FormDescriptor&) = default;

 private:
  FormKind kind_ = FormKind::Generic;
  std::uint64_t k_ = 0;
  std::uint64_t exponent_ = 0;
  Natural generic_;
};

/// Recognizes 2^p - 1, 2^(2^k) + 1 and k*2^n - 1 (odd k < 2^n, k < 2^32).
std::optional<FormDescriptor> recognize_form(const Natural& value);

/// Effort limits for every test in this module.
struct Policy {
  /// Values up to this are decided by trial division alone.
  std::uint64_t trial_division_limit = 1ull << 32;
  /// Full proving or randomized tests are skipped above this many bits.
  std::uint64_t max_full_test_bits = 20000;
  /// Prime bound for the small-factor sieve.
  std::uint64_t sieve_bound = 1'000'000;
  unsigned random_rounds = 64;
  std::uint64_t seed = 0x5eed'a11c'0b5e'55edull;
  /// Wall-clock budget per value for iterated tests; zero disables it.
  std::chrono::milliseconds time_budget{std::chrono::minutes(10)};
  /// Lets rule evaluators treat ProbablePrime as prime. Reports still show it.
  bool accept_probable = false;
};

/// Dispatcher: convention for 0 and 1, trial division for small values,
/// deterministic Miller-Rabin below numerics::deterministic_mr_bound(),
/// a form-specific proof for recognized forms, randomized Miller-Rabin
/// otherwise. Values beyond the bit cap come back Unresolved.
Verdict is_prime(const Natural& value, const Policy& policy = {});
Verdict is_prime(const FormDescriptor& form, const Policy& policy = {});

/// Trial division by every prime up to sqrt(value). value must be < 2^64.
Verdict trial_division(std::uint64_t value);

/// Miller-Rabin with the first 13 prime bases; a proof below the bound.
/// Throws DomainError outside [2, bound).
Verdict miller_rabin_deterministic(const Natural& value);

/// Miller-Rabin with `rounds` bases drawn from a generator seeded by `seed`.
Verdict miller_rabin_random(const Natural& value, unsigned rounds, std::uint64_t seed);

/// Proving test for 2^p - 1 (u0 = 4, u <- u^2 - 2, p - 2 steps).
/// Composite p yields Composite with an algebraic-factor reason.
Verdict lucas_lehmer(std::uint64_t p, const Policy& policy = {});

/// Proving test for k*2^n - 1, odd k < 2^n. The Lucas parameter P is the
/// smallest P >= 3 with (P-2 | N) = 1 and (P+2 | N) = -1; the seed is
/// V_k(P, 1) mod N and N is prime iff n - 2 squarings reach zero.
Verdict llr_riesel(std::uint64_t k, std::uint64_t n, const Policy& policy = {});

/// The Lucas parameter chosen by llr_riesel, if any (exposed for tests).
std::optional<std::uint64_t> riesel_lucas_parameter(std::uint64_t k, std::uint64_t n);

/// Proving test for 2^(2^k) + 1: prime iff 3^((F-1)/2) = -1 mod F.
/// A composite result is followed by the small-factor sieve to find a witness.
Verdict pepin(std::uint64_t k, const Policy& policy = {});

/// Tests k*2^n + delta against every prime q <= bound without building the
/// number. First hit gives Composite with witness q; otherwise Unresolved.
Verdict small_factor_sieve(std::uint64_t k, std::uint64_t n, std::int64_t delta,
                           std::uint64_t bound);

/// 3*2^n - 1 is divisible by 5 when n = 1 (mod 4). n >= 2.
std::optional<Verdict> mod4_shortcut(std::uint64_t n);

}  // namespace amicable::primality
