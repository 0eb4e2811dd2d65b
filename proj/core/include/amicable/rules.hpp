#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "amicable/natural.hpp"
#include "amicable/primality.hpp"
#include "amicable/sequences.hpp"

namespace amicable::rules {

using sequences::Index;

/// Thrown when a check or closed form is asked about an index whose
/// hypotheses do not hold (e.g. lemma1_check at an n where c_n is prime).
class PreconditionError : public DomainError {
 public:
  using DomainError::DomainError;
};

enum class RuleId {
  Thabit,
  Conjecture1IbnSina,
  Conjecture2BaghdadiFirst,
  Conjecture3Kashi,
  BaghdadiGeneral,
};

std::string_view to_string(RuleId id);
/// Accepts the canonical names and the CLI aliases (thabit, ibn-sina, kashi, ...).
RuleId rule_from_string(std::string_view name);

enum class PairStatus { Amicable, NotAmicable, ConditionsNotMet, Unresolved };

std::string_view to_string(PairStatus s);
PairStatus pair_status_from_string(std::string_view token);

/// One primality hypothesis of a rule.
struct Condition {
  std::string label;  // e.g. "a_n"
  primality::FormDescriptor form;
  primality::Verdict verdict;

  friend bool operator==(const Condition&, const Condition&) = default;
};

struct RuleReport {
  RuleId rule = RuleId::Thabit;
  Index n = 0;
  std::vector<Condition> conditions;
  std::optional<std::pair<Natural, Natural>> pair;
  PairStatus status = PairStatus::ConditionsNotMet;
  std::optional<Natural> sigma_forward;   // sigma(first)
  std::optional<Natural> sigma_backward;  // sigma(second)
  bool father = false;                    // sigma(first) == second
  /// Conditions held but the pair is not amicable. For the ibn-sina rule this
  /// is exactly a witness of the sought disproof.
  bool counterexample = false;
  std::vector<std::string> notes;

  friend bool operator==(const RuleReport&, const RuleReport&) = default;
};

struct AmicabilityVerdict {
  Natural m, n;
  Natural sigma_m, sigma_n;
  bool amicable = false;
  bool father_m_of_n = false;  // sigma(m) == n
  bool father_n_of_m = false;  // sigma(n) == m
  /// m == n, i.e. a perfect number paired with itself.
  bool self_pair = false;

  friend bool operator==(const AmicabilityVerdict&, const AmicabilityVerdict&) = default;
};

AmicabilityVerdict verify_amicable(const Natural& m, const Natural& n);

RuleReport thabit_rule(Index n, const primality::Policy& policy = {});
RuleReport conjecture1_rule(Index n, const primality::Policy& policy = {});
RuleReport conjecture2_rule(Index n, const primality::Policy& policy = {});
RuleReport conjecture3_rule(Index n, const primality::Policy& policy = {});
RuleReport baghdadi_general_rule(Index n, const primality::Policy& policy = {});
RuleReport evaluate(RuleId rule, Index n, const primality::Policy& policy = {});

/// sigma(r_n) by the closed form (2^(n+1)-1)(9*2^(n-1)-1) + (2^n-1)(9*2^(2n-1)-9*2^(n-1)+1),
/// checked to equal s_n. Requires a_n and b_n prime.
Natural sigma_r_closed_form(Index n, const primality::Policy& policy = {});

struct Lemma1Record {
  Index n = 0;
  Natural sigma_s;
  Natural r;
  Natural margin;  // sigma_s - r, strictly positive
};

/// With a_n, b_n prime and c_n composite, sigma(s_n) > r_n.
Lemma1Record lemma1_check(Index n, const primality::Policy& policy = {});

struct Lemma2Record {
  Index n = 0;
  Natural sigma_r;  // by the brute-force oracle when in range, else by factorization
  std::string sigma_method;
  Natural s;
  Natural closed_form;
  bool holds() const { return sigma_r == s && s == closed_form; }
};

/// With a_n, b_n prime, sigma(r_n) = s_n regardless of c_n.
Lemma2Record lemma2_check(Index n, const primality::Policy& policy = {});

struct AliquotPatternRecord {
  Index n = 0;
  std::vector<Natural> r_pattern, r_actual;
  std::vector<Natural> s_pattern, s_actual;
  bool c_prime = false;
  bool r_matches() const { return r_pattern == r_actual; }
  bool s_matches() const { return s_pattern == s_actual; }
  std::vector<std::string> notes;
};

/// Compares the listed aliquot parts of r_n (1..2^n times {1, a, b}, and
/// 2^k*a*b for k < n) and of s_n (2^k for k <= n, 2^k*c for k < n) against
/// the true proper divisors. The s_n listing presumes c_n prime and so
/// fails when it is not.
AliquotPatternRecord aliquot_pattern_check(Index n, const primality::Policy& policy = {});

struct PerfectNumberClaims {
  unsigned bound_exponent = 0;
  std::vector<Natural> perfect_numbers;          // even perfect numbers < 10^bound
  std::vector<std::uint64_t> mersenne_exponents;  // p with 2^p - 1 prime used above
  bool none_in_1e4_1e5 = false;                   // from the enumeration
  bool none_in_1e4_1e5_bruteforce = false;        // by direct sigma scan
  std::optional<Natural> fifth, sixth;
  bool fifth_and_sixth_end_in_6 = false;
  std::vector<std::string> notes;
};

inline constexpr unsigned kMaxPerfectBoundExponent = 30;

/// Enumerates even perfect numbers below 10^bound_exponent as 2^(p-1)(2^p-1)
/// over Mersenne primes 2^p - 1.
PerfectNumberClaims perfect_number_claims_check(unsigned bound_exponent);

}  // namespace amicable::rules
