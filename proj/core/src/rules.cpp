#include "amicable/rules.hpp"

#include <algorithm>
#include <stdexcept>

#include "amicable/numerics.hpp"

namespace amicable::rules {

namespace {

using primality::FormDescriptor;
using primality::Policy;
using primality::Verdict;

constexpr std::size_t kDeskFactorBits = 200;
constexpr Index kDeskPatternIndex = 64;

void require_index(Index n, Index min, std::string_view what) {
  if (n < min) {
    throw DomainError(std::string(what) + ": index must be >= " + std::to_string(min) +
                      ", got " + std::to_string(n));
  }
}

std::optional<std::uint64_t> exact_log2(Index n) {
  if (n == 0 || (n & (n - 1)) != 0) return std::nullopt;
  std::uint64_t k = 0;
  while ((Index{1} << k) < n) ++k;
  return k;
}

Condition make_condition(std::string label, FormDescriptor form, const Policy& policy) {
  Verdict v = primality::is_prime(form, policy);
  return {std::move(label), std::move(form), std::move(v)};
}

enum class ConditionOutcome { Hold, Fail, Unresolved };

ConditionOutcome combine(const std::vector<Condition>& conditions, const Policy& policy) {
  bool unresolved = false;
  for (const auto& c : conditions) {
    if (c.verdict.composite()) return ConditionOutcome::Fail;
    if (!c.verdict.counts_as_prime(policy.accept_probable)) unresolved = true;
  }
  return unresolved ? ConditionOutcome::Unresolved : ConditionOutcome::Hold;
}

// sigma of a value known to be 2^e times the product of `odd_primes`
// (distinct, each already certified). Falls back to desk-scale factoring.
std::optional<Natural> sigma_with_hint(const Natural& value,
                                       const std::vector<Natural>& odd_primes) {
  if (!odd_primes.empty()) {
    const std::uint64_t twos = mpz_scan1(value.mpz().get_mpz_t(), 0);
    Natural product = 1;
    std::vector<numerics::PrimePower> powers;
    if (twos > 0) powers.push_back({Natural(2), static_cast<unsigned>(twos)});
    for (const auto& p : odd_primes) {
      product *= p;
      powers.push_back({p, 1});
    }
    if ((value >> twos) == product) {
      return numerics::sigma_proper(numerics::Factorization::from_certified_prime_powers(powers));
    }
  }
  if (value.bit_length() > kDeskFactorBits) return std::nullopt;
  try {
    return numerics::sigma_proper(value);
  } catch (const numerics::FactorizationBudgetExceeded&) {
    return std::nullopt;
  }
}

// Conditions hold: verify the generated pair and fill the report.
void verify_pair(RuleReport& report, const Natural& first, const Natural& second,
                 const std::optional<Natural>& sigma_first,
                 const std::optional<Natural>& sigma_second) {
  report.pair = std::make_pair(first, second);
  report.sigma_forward = sigma_first;
  report.sigma_backward = sigma_second;
  report.father = sigma_first && *sigma_first == second;
  if (!sigma_first || !sigma_second) {
    report.status = PairStatus::Unresolved;
    report.notes.push_back("divisor sums beyond desk-scale factoring; pair not verified");
    return;
  }
  const bool amicable = *sigma_first == second && *sigma_second == first;
  report.status = amicable ? PairStatus::Amicable : PairStatus::NotAmicable;
  if (!amicable) {
    report.counterexample = true;
    report.notes.push_back("conditions hold but the generated pair is NOT amicable");
  }
  if (report.father && !amicable) {
    report.notes.push_back(first.to_string() + " is a father of " + second.to_string());
  }
}

bool relies_on_probable(const RuleReport& report) {
  return std::any_of(report.conditions.begin(), report.conditions.end(), [](const Condition& c) {
    return c.verdict.status == primality::Status::ProbablePrime;
  });
}

// Shared body of the three rules that all generate (r_n, s_n).
RuleReport thabit_family_rule(RuleId id, Index n, const Policy& policy) {
  const auto t = sequences::thabit_triple(n);
  RuleReport report;
  report.rule = id;
  report.n = n;
  report.conditions.push_back(
      make_condition("a_n", FormDescriptor::k_two_n_minus_1(3, n - 1), policy));
  report.conditions.push_back(make_condition("b_n", FormDescriptor::k_two_n_minus_1(3, n), policy));
  if (id == RuleId::Thabit) {
    report.conditions.push_back(
        make_condition("c_n", FormDescriptor::k_two_n_minus_1(9, 2 * n - 1), policy));
  } else if (id == RuleId::Conjecture1IbnSina) {
    report.conditions.push_back(
        make_condition("m_{n+1}", FormDescriptor::mersenne(n + 1), policy));
  }

  switch (combine(report.conditions, policy)) {
    case ConditionOutcome::Fail: report.status = PairStatus::ConditionsNotMet; return report;
    case ConditionOutcome::Unresolved:
      report.status = PairStatus::Unresolved;
      report.notes.push_back("a condition could not be decided within the policy budget");
      return report;
    case ConditionOutcome::Hold: break;
  }

  // The pair's second member 2^n*c_n admits a hint only when c_n is prime.
  std::vector<Natural> s_hint;
  const Verdict c_verdict =
      id == RuleId::Thabit ? report.conditions[2].verdict
                           : primality::is_prime(FormDescriptor::k_two_n_minus_1(9, 2 * n - 1),
                                                 policy);
  if (c_verdict.counts_as_prime(policy.accept_probable)) s_hint.push_back(t.c);
  if (id != RuleId::Thabit) {
    report.notes.push_back("c_n is " + std::string(primality::to_string(c_verdict.status)) +
                           " (" + c_verdict.method + ")");
  }

  verify_pair(report, t.r, t.s, sigma_with_hint(t.r, {t.a, t.b}), sigma_with_hint(t.s, s_hint));
  if (report.counterexample && id == RuleId::Conjecture1IbnSina) {
    report.notes.push_back("COUNTEREXAMPLE: a_n, b_n, m_{n+1} prime and c_n not prime");
  }
  if (relies_on_probable(report)) {
    report.notes.push_back("verdict relies on probable primes (relaxed policy)");
  }
  return report;
}

}  // namespace

std::string_view to_string(RuleId id) {
  switch (id) {
    case RuleId::Thabit: return "thabit";
    case RuleId::Conjecture1IbnSina: return "conjecture1-ibn-sina";
    case RuleId::Conjecture2BaghdadiFirst: return "conjecture2-baghdadi-first";
    case RuleId::Conjecture3Kashi: return "conjecture3-kashi";
    case RuleId::BaghdadiGeneral: return "baghdadi-general";
  }
  return "thabit";
}

RuleId rule_from_string(std::string_view name) {
  if (name == "thabit") return RuleId::Thabit;
  if (name == "conjecture1-ibn-sina" || name == "conjecture1" || name == "ibn-sina" ||
      name == "sina")
    return RuleId::Conjecture1IbnSina;
  if (name == "conjecture2-baghdadi-first" || name == "conjecture2" || name == "baghdadi-first")
    return RuleId::Conjecture2BaghdadiFirst;
  if (name == "conjecture3-kashi" || name == "conjecture3" || name == "kashi")
    return RuleId::Conjecture3Kashi;
  if (name == "baghdadi-general" || name == "baghdadi") return RuleId::BaghdadiGeneral;
  throw DomainError("unknown rule '" + std::string(name) + "'");
}

std::string_view to_string(PairStatus s) {
  switch (s) {
    case PairStatus::Amicable: return "amicable";
    case PairStatus::NotAmicable: return "not-amicable";
    case PairStatus::ConditionsNotMet: return "conditions-not-met";
    case PairStatus::Unresolved: return "unresolved";
  }
  return "unresolved";
}

PairStatus pair_status_from_string(std::string_view token) {
  for (PairStatus s : {PairStatus::Amicable, PairStatus::NotAmicable,
                       PairStatus::ConditionsNotMet, PairStatus::Unresolved}) {
    if (to_string(s) == token) return s;
  }
  throw DomainError("unknown pair status '" + std::string(token) + "'");
}

AmicabilityVerdict verify_amicable(const Natural& m, const Natural& n) {
  AmicabilityVerdict v;
  v.m = m;
  v.n = n;
  v.sigma_m = numerics::sigma_proper(m);
  v.sigma_n = numerics::sigma_proper(n);
  v.father_m_of_n = v.sigma_m == n;
  v.father_n_of_m = v.sigma_n == m;
  v.amicable = v.father_m_of_n && v.father_n_of_m && m != n;
  v.self_pair = m == n;
  return v;
}

RuleReport thabit_rule(Index n, const Policy& policy) {
  require_index(n, 2, "thabit_rule");
  return thabit_family_rule(RuleId::Thabit, n, policy);
}

RuleReport conjecture1_rule(Index n, const Policy& policy) {
  require_index(n, 2, "conjecture1_rule");
  return thabit_family_rule(RuleId::Conjecture1IbnSina, n, policy);
}

RuleReport conjecture3_rule(Index n, const Policy& policy) {
  require_index(n, 2, "conjecture3_rule");
  return thabit_family_rule(RuleId::Conjecture3Kashi, n, policy);
}

RuleReport conjecture2_rule(Index n, const Policy& policy) {
  require_index(n, 2, "conjecture2_rule");
  const auto f = sequences::baghdadi_first(n);
  RuleReport report;
  report.rule = RuleId::Conjecture2BaghdadiFirst;
  report.n = n;
  const auto alpha_form = exact_log2(n) ? FormDescriptor::fermat(*exact_log2(n))
                                        : FormDescriptor::generic(f.alpha);
  report.conditions.push_back(make_condition("alpha_n", alpha_form, policy));
  report.conditions.push_back(make_condition("beta_n", FormDescriptor::generic(f.beta), policy));
  report.conditions.push_back(make_condition("gamma_n", FormDescriptor::generic(f.gamma), policy));

  switch (combine(report.conditions, policy)) {
    case ConditionOutcome::Fail: report.status = PairStatus::ConditionsNotMet; return report;
    case ConditionOutcome::Unresolved:
      report.status = PairStatus::Unresolved;
      report.notes.push_back("a condition could not be decided within the policy budget");
      return report;
    case ConditionOutcome::Hold: break;
  }
  verify_pair(report, f.lambda, f.mu, sigma_with_hint(f.lambda, {f.alpha, f.beta}),
              sigma_with_hint(f.mu, {}));
  const Integer residual = sequences::conjecture2_residual(n);
  report.notes.push_back("residual 2^(2n) - 2^(n+1) - 8 = " + residual.get_str());
  if (relies_on_probable(report)) {
    report.notes.push_back("verdict relies on probable primes (relaxed policy)");
  }
  return report;
}

RuleReport baghdadi_general_rule(Index n, const Policy& policy) {
  require_index(n, 1, "baghdadi_general_rule");
  const auto g = sequences::baghdadi_general(n);
  RuleReport report;
  report.rule = RuleId::BaghdadiGeneral;
  report.n = n;
  report.conditions.push_back(
      make_condition("A_n", FormDescriptor::k_two_n_minus_1(3, n + 1), policy));
  report.conditions.push_back(
      make_condition("B_n", FormDescriptor::k_two_n_minus_1(3, n + 2), policy));
  report.conditions.push_back(make_condition("M_n", FormDescriptor::mersenne(n + 3), policy));

  switch (combine(report.conditions, policy)) {
    case ConditionOutcome::Fail: report.status = PairStatus::ConditionsNotMet; return report;
    case ConditionOutcome::Unresolved:
      report.status = PairStatus::Unresolved;
      report.notes.push_back("a condition could not be decided within the policy budget");
      return report;
    case ConditionOutcome::Hold: break;
  }
  const auto t = sequences::thabit_triple(n + 2);
  const Verdict c_verdict =
      primality::is_prime(FormDescriptor::k_two_n_minus_1(9, 2 * (n + 2) - 1), policy);
  std::vector<Natural> s_hint;
  if (c_verdict.counts_as_prime(policy.accept_probable)) s_hint.push_back(t.c);
  report.notes.push_back("shifted c_{n+2} is " +
                         std::string(primality::to_string(c_verdict.status)));
  verify_pair(report, g.r, g.s, sigma_with_hint(g.r, {g.a, g.b}), sigma_with_hint(g.s, s_hint));
  if (report.counterexample) {
    report.notes.push_back("COUNTEREXAMPLE: A_n, B_n, M_n prime but the pair is not amicable");
  }
  return report;
}

RuleReport evaluate(RuleId rule, Index n, const Policy& policy) {
  switch (rule) {
    case RuleId::Thabit: return thabit_rule(n, policy);
    case RuleId::Conjecture1IbnSina: return conjecture1_rule(n, policy);
    case RuleId::Conjecture2BaghdadiFirst: return conjecture2_rule(n, policy);
    case RuleId::Conjecture3Kashi: return conjecture3_rule(n, policy);
    case RuleId::BaghdadiGeneral: return baghdadi_general_rule(n, policy);
  }
  throw std::logic_error("unreachable rule id");
}

namespace {

void require_ab_prime(Index n, const Policy& policy, std::string_view what) {
  require_index(n, 2, what);
  const Verdict a = primality::is_prime(FormDescriptor::k_two_n_minus_1(3, n - 1), policy);
  const Verdict b = primality::is_prime(FormDescriptor::k_two_n_minus_1(3, n), policy);
  if (!a.counts_as_prime(policy.accept_probable) || !b.counts_as_prime(policy.accept_probable)) {
    throw PreconditionError(std::string(what) + ": requires a_n and b_n prime at n = " +
                            std::to_string(n) + " (a_n " +
                            std::string(primality::to_string(a.status)) + ", b_n " +
                            std::string(primality::to_string(b.status)) + ")");
  }
}

Natural desk_sigma(const Natural& v, std::string& method) {
  if (v <= Natural(numerics::kOracleBound)) {
    method = "bruteforce";
    return numerics::sigma_proper_bruteforce(v);
  }
  if (v.bit_length() > kDeskFactorBits) {
    throw PreconditionError("value " + std::to_string(v.decimal_digits()) +
                            " digits long is beyond desk-scale sigma computation");
  }
  method = "factorization";
  return numerics::sigma_proper(v);
}

}  // namespace

Natural sigma_r_closed_form(Index n, const Policy& policy) {
  require_ab_prime(n, policy, "sigma_r_closed_form");
  const Natural p2n = Natural::pow2(n);
  const Natural p2n1 = Natural::pow2(n - 1);
  const Natural value = (Natural::pow2(n + 1) - 1) * (9 * p2n1 - 1) +
                        (p2n - 1) * (9 * Natural::pow2(2 * n - 1) - 9 * p2n1 + 1);
  const auto t = sequences::thabit_triple(n);
  if (value != t.s) {
    throw std::logic_error("sigma_r_closed_form: closed form differs from s_n at n = " +
                           std::to_string(n));
  }
  return value;
}

Lemma1Record lemma1_check(Index n, const Policy& policy) {
  require_ab_prime(n, policy, "lemma1_check");
  const Verdict c = primality::is_prime(FormDescriptor::k_two_n_minus_1(9, 2 * n - 1), policy);
  if (!c.composite()) {
    throw PreconditionError("lemma1_check: requires c_n composite at n = " + std::to_string(n) +
                            " (c_n " + std::string(primality::to_string(c.status)) + ")");
  }
  const auto t = sequences::thabit_triple(n);
  std::string method;
  Lemma1Record rec{n, desk_sigma(t.s, method), t.r, Natural(0)};
  if (!(rec.sigma_s > rec.r)) {
    throw std::logic_error("lemma1_check: sigma(s_n) <= r_n at n = " + std::to_string(n));
  }
  rec.margin = rec.sigma_s - rec.r;
  return rec;
}

Lemma2Record lemma2_check(Index n, const Policy& policy) {
  require_ab_prime(n, policy, "lemma2_check");
  const auto t = sequences::thabit_triple(n);
  Lemma2Record rec;
  rec.n = n;
  rec.sigma_r = desk_sigma(t.r, rec.sigma_method);
  rec.s = t.s;
  rec.closed_form = sigma_r_closed_form(n, policy);
  return rec;
}

AliquotPatternRecord aliquot_pattern_check(Index n, const Policy& policy) {
  require_ab_prime(n, policy, "aliquot_pattern_check");
  if (n > kDeskPatternIndex) {
    throw PreconditionError("aliquot_pattern_check: n beyond desk scale");
  }
  const auto t = sequences::thabit_triple(n);
  AliquotPatternRecord rec;
  rec.n = n;
  for (Index k = 0; k <= n; ++k) {
    const Natural p = Natural::pow2(k);
    rec.r_pattern.push_back(p);
    rec.r_pattern.push_back(p * t.a);
    rec.r_pattern.push_back(p * t.b);
    if (k < n) rec.r_pattern.push_back(p * t.a * t.b);
    rec.s_pattern.push_back(p);
    if (k < n) rec.s_pattern.push_back(p * t.c);
  }
  std::sort(rec.r_pattern.begin(), rec.r_pattern.end());
  std::sort(rec.s_pattern.begin(), rec.s_pattern.end());

  rec.r_actual = numerics::divisors_proper(t.r);
  rec.s_actual = numerics::divisors_proper(t.s);
  rec.c_prime = primality::is_prime(FormDescriptor::k_two_n_minus_1(9, 2 * n - 1), policy)
                    .counts_as_prime(policy.accept_probable);

  if (!rec.s_matches()) {
    std::vector<Natural> missing;
    std::set_difference(rec.s_actual.begin(), rec.s_actual.end(), rec.s_pattern.begin(),
                        rec.s_pattern.end(), std::back_inserter(missing));
    std::string listed;
    for (std::size_t i = 0; i < missing.size() && i < 8; ++i) {
      listed += (i ? ", " : "") + missing[i].to_string();
    }
    if (missing.size() > 8) listed += ", ...";
    rec.notes.push_back("s_n listing presumes c_n = " + t.c.to_string() +
                        " prime; true divisors missing from it: " + listed);
  }
  return rec;
}

PerfectNumberClaims perfect_number_claims_check(unsigned bound_exponent) {
  if (bound_exponent < 1 || bound_exponent > kMaxPerfectBoundExponent) {
    throw DomainError("perfect_number_claims_check: bound exponent must be in 1.." +
                      std::to_string(kMaxPerfectBoundExponent));
  }
  PerfectNumberClaims out;
  out.bound_exponent = bound_exponent;
  const Natural bound = Natural(10).pow(bound_exponent);
  const Natural lo = Natural(10).pow(4), hi = Natural(10).pow(5);

  std::vector<Natural> up_to_1e5;
  for (std::uint64_t p = 2;; ++p) {
    if (!primality::trial_division(p).proven_prime()) continue;
    const Natural perfect = Natural::pow2(p - 1) * (Natural::pow2(p) - 1);
    if (perfect >= bound && perfect >= hi) break;
    if (!primality::lucas_lehmer(p).proven_prime()) continue;
    if (perfect < bound) {
      out.perfect_numbers.push_back(perfect);
      out.mersenne_exponents.push_back(p);
    }
    if (perfect < hi) up_to_1e5.push_back(perfect);
  }
  out.none_in_1e4_1e5 = std::none_of(up_to_1e5.begin(), up_to_1e5.end(), [&](const Natural& x) {
    return x > lo && x < hi;
  });

  out.none_in_1e4_1e5_bruteforce = true;
  for (std::uint64_t x = 10001; x < 100000; ++x) {
    if (numerics::sigma_proper_bruteforce(x) == x) {
      out.none_in_1e4_1e5_bruteforce = false;
      break;
    }
  }

  if (out.perfect_numbers.size() >= 5) out.fifth = out.perfect_numbers[4];
  if (out.perfect_numbers.size() >= 6) out.sixth = out.perfect_numbers[5];
  if (out.fifth && out.sixth) {
    out.fifth_and_sixth_end_in_6 = out.fifth->mod_u64(10) == 6 && out.sixth->mod_u64(10) == 6;
  }
  if (out.perfect_numbers.size() >= 4) {
    out.notes.push_back("fourth perfect number is " + out.perfect_numbers[3].to_string() +
                        ", not 8120");
  }
  out.notes.push_back("enumeration covers even perfect numbers only");
  return out;
}

}  // namespace amicable::rules
