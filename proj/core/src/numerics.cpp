#include "amicable/numerics.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <mutex>

namespace amicable::numerics {

namespace {

constexpr std::array<unsigned long, 13> kDeterministicBases = {2,  3,  5,  7,  11, 13, 17,
                                                               19, 23, 29, 31, 37, 41};

void normalize(std::vector<PrimePower>& powers) {
  std::sort(powers.begin(), powers.end(),
            [](const PrimePower& x, const PrimePower& y) { return x.prime < y.prime; });
  std::vector<PrimePower> merged;
  for (auto& pp : powers) {
    if (pp.exponent == 0) throw DomainError("Factorization: zero exponent");
    if (!merged.empty() && merged.back().prime == pp.prime) {
      merged.back().exponent += pp.exponent;
    } else {
      merged.push_back(std::move(pp));
    }
  }
  powers = std::move(merged);
}

class RhoBudget {
 public:
  explicit RhoBudget(std::uint64_t limit) : remaining_(limit) {}
  bool spend(std::uint64_t n) {
    if (n > remaining_) {
      remaining_ = 0;
      return false;
    }
    remaining_ -= n;
    return true;
  }

 private:
  std::uint64_t remaining_;
};

// Brent's variant of Pollard rho with batched gcds. Returns a nontrivial
// factor or 0 when the budget runs out.
mpz_class brent_rho(const mpz_class& n, unsigned long c, RhoBudget& budget) {
  constexpr std::uint64_t kBatch = 128;
  mpz_class y = 2, x, ys, q = 1, g = 1, t;
  std::uint64_t r = 1;
  auto step = [&](mpz_class& v) {
    v = v * v + c;
    mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
  };
  while (g == 1) {
    x = y;
    for (std::uint64_t i = 0; i < r; ++i) step(y);
    std::uint64_t k = 0;
    while (k < r && g == 1) {
      ys = y;
      const std::uint64_t m = std::min(kBatch, r - k);
      if (!budget.spend(m)) return 0;
      for (std::uint64_t i = 0; i < m; ++i) {
        step(y);
        t = x - y;
        mpz_abs(t.get_mpz_t(), t.get_mpz_t());
        q *= t;
        mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      k += m;
    }
    r *= 2;
  }
  if (g == n) {
    // Batch overshot; replay one step at a time from the saved point.
    do {
      if (!budget.spend(1)) return 0;
      step(ys);
      t = x - ys;
      mpz_abs(t.get_mpz_t(), t.get_mpz_t());
      mpz_gcd(g.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  return g == n ? mpz_class(0) : g;
}

void split(const mpz_class& n, std::vector<PrimePower>& out, RhoBudget& budget,
           unsigned multiplicity) {
  if (n == 1) return;
  if (is_prime_for_factoring(Natural(n))) {
    out.push_back({Natural(n), multiplicity});
    return;
  }
  // Perfect powers defeat rho; peel them explicitly.
  const std::size_t bits = mpz_perfect_power_p(n.get_mpz_t()) != 0
                               ? mpz_sizeinbase(n.get_mpz_t(), 2)
                               : 1;
  for (unsigned long k = bits; k >= 2; --k) {
    mpz_class root;
    if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) {
      split(root, out, budget, multiplicity * static_cast<unsigned>(k));
      return;
    }
  }
  for (unsigned long c = 1;; ++c) {
    mpz_class d = brent_rho(n, c, budget);
    if (d == 0) {
      throw FactorizationBudgetExceeded(
          "factorize: rho budget exhausted on cofactor " + n.get_str(), Natural(n));
    }
    if (d != 1 && d != n) {
      mpz_class rest = n / d;
      split(d, out, budget, multiplicity);
      split(rest, out, budget, multiplicity);
      return;
    }
  }
}

}  // namespace

Factorization Factorization::from_prime_powers(std::vector<PrimePower> powers) {
  for (const auto& pp : powers) {
    if (!is_prime_for_factoring(pp.prime)) {
      throw DomainError("Factorization: " + pp.prime.to_string() + " is not prime");
    }
  }
  return from_certified_prime_powers(std::move(powers));
}

Factorization Factorization::from_certified_prime_powers(std::vector<PrimePower> powers) {
  normalize(powers);
  Factorization f;
  f.factors_ = std::move(powers);
  return f;
}

Natural Factorization::value() const {
  Natural v = 1;
  for (const auto& pp : factors_) v *= pp.prime.pow(pp.exponent);
  return v;
}

bool is_strong_probable_prime(const Natural& n, const Natural& base) {
  const mpz_class& nz = n.mpz();
  const mpz_class n_minus_1 = nz - 1;
  mpz_class d = n_minus_1;
  const mp_bitcnt_t s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  mpz_class a = base.mpz() % nz;
  if (a == 0) return true;
  mpz_class x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), nz.get_mpz_t());
  if (x == 1 || x == n_minus_1) return true;
  for (mp_bitcnt_t i = 1; i < s; ++i) {
    x = x * x;
    mpz_mod(x.get_mpz_t(), x.get_mpz_t(), nz.get_mpz_t());
    if (x == n_minus_1) return true;
    if (x == 1) return false;
  }
  return false;
}

bool is_prime_for_factoring(const Natural& n) {
  if (n < 2) return false;
  for (unsigned long p : kDeterministicBases) {
    if (n == p) return true;
    if (n.mod_u64(p) == 0) return false;
  }
  const bool proven_range = n < deterministic_mr_bound();
  const std::size_t rounds = proven_range ? kDeterministicBases.size() : 32;
  for (std::size_t i = 0; i < rounds; ++i) {
    // Beyond the proven range extend the base list with small primes.
    const unsigned long base =
        i < kDeterministicBases.size() ? kDeterministicBases[i] : primes_up_to(1000)[i];
    if (!is_strong_probable_prime(n, base)) return false;
  }
  return true;
}

std::span<const std::uint32_t> primes_up_to(std::uint32_t limit) {
  static std::mutex mutex;
  static std::map<std::uint32_t, std::unique_ptr<std::vector<std::uint32_t>>> memo;
  std::lock_guard lock(mutex);
  auto& slot = memo[limit];
  if (!slot) {
    std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
    auto primes = std::make_unique<std::vector<std::uint32_t>>();
    for (std::uint64_t i = 2; i <= limit; ++i) {
      if (composite[i]) continue;
      primes->push_back(static_cast<std::uint32_t>(i));
      for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    slot = std::move(primes);
  }
  return *slot;
}

Factorization factorize(const Natural& n, const FactorOptions& options) {
  if (n < 2) throw DomainError("factorize: n must be >= 2, got " + n.to_string());
  std::vector<PrimePower> powers;

  if (n.fits_u64()) {
    std::uint64_t m = n.to_u64();
    bool past_sqrt = false;
    for (std::uint32_t p : primes_up_to(options.trial_bound)) {
      const std::uint64_t pp = p;
      if (pp * pp > m) {
        past_sqrt = true;
        break;
      }
      if (m % pp != 0) continue;
      unsigned e = 0;
      while (m % pp == 0) {
        m /= pp;
        ++e;
      }
      powers.push_back({Natural(pp), e});
    }
    if (m > 1 && past_sqrt) {
      powers.push_back({Natural(m), 1});
    } else if (m > 1) {
      RhoBudget budget(options.rho_iteration_budget);
      split(mpz_class(static_cast<unsigned long>(m)), powers, budget, 1);
    }
  } else {
    mpz_class m = n.mpz();
    for (std::uint32_t p : primes_up_to(options.trial_bound)) {
      if (mpz_divisible_ui_p(m.get_mpz_t(), p) == 0) continue;
      unsigned e = 0;
      while (mpz_divisible_ui_p(m.get_mpz_t(), p) != 0) {
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
        ++e;
      }
      powers.push_back({Natural(p), e});
      if (m == 1) break;
    }
    RhoBudget budget(options.rho_iteration_budget);
    split(m, powers, budget, 1);
  }

  normalize(powers);
  Factorization f;
  f.factors_ = std::move(powers);
  return f;
}

Natural sigma_total(const Factorization& f) {
  Natural total = 1;
  for (const auto& pp : f.factors()) {
    // (p^(e+1) - 1) / (p - 1)
    total *= (pp.prime.pow(pp.exponent + 1) - 1) / (pp.prime - 1);
  }
  return total;
}

Natural sigma_proper(const Factorization& f) { return sigma_total(f) - f.value(); }

Natural sigma_proper(const Natural& n, const FactorOptions& options) {
  if (n.is_zero()) throw DomainError("sigma_proper: undefined for 0");
  if (n == 1) return 0;
  return sigma_proper(factorize(n, options));
}

Natural sigma_proper_bruteforce(const Natural& n, std::uint64_t bound) {
  if (n.is_zero()) throw DomainError("sigma_proper_bruteforce: undefined for 0");
  if (n > Natural(bound)) {
    throw DomainError("sigma_proper_bruteforce: " + n.to_string() + " exceeds oracle bound " +
                      std::to_string(bound));
  }
  const std::uint64_t v = n.to_u64();
  if (v == 1) return 0;
  std::uint64_t sum = 1;
  for (std::uint64_t d = 2; d * d <= v; ++d) {
    if (v % d != 0) continue;
    const std::uint64_t e = v / d;
    sum += d;
    if (e != d) sum += e;
  }
  return sum;
}

std::vector<Natural> divisors_proper(const Factorization& f) {
  std::vector<Natural> all{Natural(1)};
  for (const auto& pp : f.factors()) {
    const std::size_t base_count = all.size();
    Natural power = 1;
    for (unsigned e = 1; e <= pp.exponent; ++e) {
      power *= pp.prime;
      for (std::size_t i = 0; i < base_count; ++i) all.push_back(all[i] * power);
    }
  }
  std::sort(all.begin(), all.end());
  all.pop_back();  // n itself
  return all;
}

std::vector<Natural> divisors_proper(const Natural& n, const FactorOptions& options) {
  if (n.is_zero()) throw DomainError("divisors_proper: undefined for 0");
  if (n == 1) return {};
  return divisors_proper(factorize(n, options));
}

}  // namespace amicable::numerics
