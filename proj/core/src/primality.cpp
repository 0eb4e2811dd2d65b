#include "amicable/primality.hpp"

#include <sstream>

#include "amicable/numerics.hpp"

namespace amicable::primality {

namespace {

using Clock = std::chrono::steady_clock;

class Deadline {
 public:
  explicit Deadline(std::chrono::milliseconds budget)
      : enabled_(budget.count() > 0), end_(Clock::now() + budget) {}
  bool expired() const { return enabled_ && Clock::now() > end_; }

 private:
  bool enabled_;
  Clock::time_point end_;
};

constexpr std::uint64_t kDeadlineStride = 256;

__extension__ using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow2_mod(std::uint64_t exponent, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  std::uint64_t base = 2 % m;
  while (exponent > 0) {
    if (exponent & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exponent >>= 1;
  }
  return result;
}

std::string too_large_reason(std::uint64_t bits, std::uint64_t cap) {
  return "value has " + std::to_string(bits) + " bits, above the full-test cap of " +
         std::to_string(cap) + " bits";
}

// x <- x mod (2^p - 1) using shifts only.
void reduce_mersenne(mpz_class& x, std::uint64_t p, const mpz_class& modulus) {
  mpz_class hi;
  while (cmp(x, modulus) > 0) {
    mpz_tdiv_q_2exp(hi.get_mpz_t(), x.get_mpz_t(), p);
    mpz_tdiv_r_2exp(x.get_mpz_t(), x.get_mpz_t(), p);
    x += hi;
  }
  if (x == modulus) x = 0;
}

// V_k(P, 1) mod n by the binary Lucas ladder.
mpz_class lucas_v(std::uint64_t k, const mpz_class& P, const mpz_class& n) {
  mpz_class vl = 2, vh = P;
  for (int bit = 63 - __builtin_clzll(k); bit >= 0; --bit) {
    if ((k >> bit) & 1) {
      vl = vl * vh - P;
      vh = vh * vh - 2;
    } else {
      vh = vl * vh - P;
      vl = vl * vl - 2;
    }
    mpz_mod(vl.get_mpz_t(), vl.get_mpz_t(), n.get_mpz_t());
    mpz_mod(vh.get_mpz_t(), vh.get_mpz_t(), n.get_mpz_t());
  }
  return vl;
}

bool is_small_prime(std::uint64_t v) { return trial_division(v).proven_prime(); }

}  // namespace

std::string_view to_string(Status s) {
  switch (s) {
    case Status::ProvenPrime: return "proven-prime";
    case Status::Composite: return "composite";
    case Status::ProbablePrime: return "probable-prime";
    case Status::Unresolved: return "unresolved";
  }
  return "unresolved";
}

Status status_from_string(std::string_view token) {
  for (Status s : {Status::ProvenPrime, Status::Composite, Status::ProbablePrime,
                   Status::Unresolved}) {
    if (to_string(s) == token) return s;
  }
  throw DomainError("unknown primality status '" + std::string(token) + "'");
}

std::string_view to_string(FormKind k) {
  switch (k) {
    case FormKind::Generic: return "generic";
    case FormKind::KTwoNMinus1: return "riesel";
    case FormKind::Mersenne: return "mersenne";
    case FormKind::FermatForm: return "fermat";
  }
  return "generic";
}

Verdict Verdict::proven(std::string method) {
  return {Status::ProvenPrime, std::move(method), std::nullopt, std::nullopt, std::nullopt};
}

Verdict Verdict::composite_by(std::string method, std::optional<Natural> witness) {
  return {Status::Composite, std::move(method), std::move(witness), std::nullopt, std::nullopt};
}

Verdict Verdict::probable(std::string method, unsigned rounds) {
  return {Status::ProbablePrime, std::move(method), std::nullopt, rounds, std::nullopt};
}

Verdict Verdict::unresolved(std::string method, std::string reason) {
  return {Status::Unresolved, std::move(method), std::nullopt, std::nullopt, std::move(reason)};
}

// ---------------------------------------------------------------------------
// FormDescriptor

FormDescriptor FormDescriptor::generic(Natural value) {
  FormDescriptor f;
  f.kind_ = FormKind::Generic;
  f.generic_ = std::move(value);
  return f;
}

FormDescriptor FormDescriptor::k_two_n_minus_1(std::uint64_t k, std::uint64_t n) {
  if (k == 0) throw DomainError("FormDescriptor: k must be positive");
  FormDescriptor f;
  f.kind_ = FormKind::KTwoNMinus1;
  f.k_ = k;
  f.exponent_ = n;
  return f;
}

FormDescriptor FormDescriptor::mersenne(std::uint64_t p) {
  FormDescriptor f;
  f.kind_ = FormKind::Mersenne;
  f.k_ = 1;
  f.exponent_ = p;
  return f;
}

FormDescriptor FormDescriptor::fermat(std::uint64_t k) {
  if (k >= 64) throw DomainError("FormDescriptor: Fermat index too large");
  FormDescriptor f;
  f.kind_ = FormKind::FermatForm;
  f.exponent_ = k;
  return f;
}

Natural FormDescriptor::value() const {
  switch (kind_) {
    case FormKind::Generic: return generic_;
    case FormKind::KTwoNMinus1: return Natural(k_) * Natural::pow2(exponent_) - 1;
    case FormKind::Mersenne: return Natural::pow2(exponent_) - 1;
    case FormKind::FermatForm: return Natural::pow2(1ull << exponent_) + 1;
  }
  return generic_;
}

std::uint64_t FormDescriptor::bit_length_estimate() const {
  switch (kind_) {
    case FormKind::Generic: return generic_.bit_length();
    case FormKind::KTwoNMinus1: return Natural(k_).bit_length() + exponent_;
    case FormKind::Mersenne: return exponent_;
    case FormKind::FermatForm: return (1ull << exponent_) + 1;
  }
  return 0;
}

std::string FormDescriptor::expression() const {
  switch (kind_) {
    case FormKind::Generic: return generic_.to_string();
    case FormKind::KTwoNMinus1:
      return std::to_string(k_) + "*2^" + std::to_string(exponent_) + " - 1";
    case FormKind::Mersenne: return "2^" + std::to_string(exponent_) + " - 1";
    case FormKind::FermatForm: return "2^(2^" + std::to_string(exponent_) + ") + 1";
  }
  return {};
}

std::string FormDescriptor::key() const {
  std::string out(to_string(kind_));
  switch (kind_) {
    case FormKind::Generic: return out + " " + generic_.to_string();
    case FormKind::KTwoNMinus1:
      return out + " " + std::to_string(k_) + " " + std::to_string(exponent_);
    case FormKind::Mersenne:
    case FormKind::FermatForm: return out + " " + std::to_string(exponent_);
  }
  return out;
}

FormDescriptor FormDescriptor::from_key(std::string_view key) {
  std::istringstream in{std::string(key)};
  std::string kind, a, b, extra;
  in >> kind >> a;
  auto number = [&](const std::string& t) {
    const Natural v = Natural::from_decimal(t);
    return v.to_u64();
  };
  if (kind == "generic" && !a.empty() && !(in >> extra)) return generic(Natural::from_decimal(a));
  if (kind == "mersenne" && !a.empty() && !(in >> extra)) return mersenne(number(a));
  if (kind == "fermat" && !a.empty() && !(in >> extra)) return fermat(number(a));
  if (kind == "riesel" && !a.empty() && (in >> b) && !(in >> extra)) {
    return k_two_n_minus_1(number(a), number(b));
  }
  throw DomainError("malformed form key '" + std::string(key) + "'");
}

std::optional<FormDescriptor> recognize_form(const Natural& value) {
  if (value < 3) return std::nullopt;
  {
    const Natural plus = value + 1;
    const std::uint64_t twos = mpz_scan1(plus.mpz().get_mpz_t(), 0);
    const Natural k = plus >> twos;
    if (k == 1) return FormDescriptor::mersenne(twos);
    if (k.fits_u64() && k.to_u64() < (1ull << 32) && (twos >= 32 || k < Natural::pow2(twos))) {
      return FormDescriptor::k_two_n_minus_1(k.to_u64(), twos);
    }
  }
  {
    const Natural minus = value - 1;
    const std::uint64_t twos = mpz_scan1(minus.mpz().get_mpz_t(), 0);
    if ((minus >> twos) == 1 && twos > 0 && (twos & (twos - 1)) == 0) {
      std::uint64_t k = 0;
      while ((1ull << k) < twos) ++k;
      if (k >= 1) return FormDescriptor::fermat(k);
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// General-purpose tests

Verdict trial_division(std::uint64_t value) {
  if (value < 2) {
    Verdict v = Verdict::composite_by("convention");
    v.reason = "0 and 1 are not prime";
    return v;
  }
  if (value < 4) return Verdict::proven("trial-division");
  if (value % 2 == 0) return Verdict::composite_by("trial-division", Natural(2));
  for (std::uint64_t d = 3; d <= value / d; d += 2) {
    if (value % d == 0) return Verdict::composite_by("trial-division", Natural(d));
  }
  return Verdict::proven("trial-division");
}

Verdict miller_rabin_deterministic(const Natural& value) {
  if (value < 2 || !(value < numerics::deterministic_mr_bound())) {
    throw DomainError("miller_rabin_deterministic: value outside the proven range");
  }
  static constexpr unsigned long kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
  for (unsigned long p : kBases) {
    if (value == p) return Verdict::proven("miller-rabin-deterministic");
  }
  if (!value.is_odd()) return Verdict::composite_by("miller-rabin-deterministic");
  for (unsigned long base : kBases) {
    if (!numerics::is_strong_probable_prime(value, base)) {
      return Verdict::composite_by("miller-rabin-deterministic");
    }
  }
  return Verdict::proven("miller-rabin-deterministic");
}

Verdict miller_rabin_random(const Natural& value, unsigned rounds, std::uint64_t seed) {
  if (value < 5) {
    Verdict v = trial_division(value.to_u64());
    return v;
  }
  if (!value.is_odd()) return Verdict::composite_by("miller-rabin-random");
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(static_cast<unsigned long>(seed));
  const mpz_class span = value.mpz() - 3;
  for (unsigned i = 0; i < rounds; ++i) {
    const Natural base(rng.get_z_range(span) + 2);
    if (!numerics::is_strong_probable_prime(value, base)) {
      return Verdict::composite_by("miller-rabin-random");
    }
  }
  return Verdict::probable("miller-rabin-random", rounds);
}

// ---------------------------------------------------------------------------
// Form-specific tests

Verdict lucas_lehmer(std::uint64_t p, const Policy& policy) {
  if (p < 2) throw DomainError("lucas_lehmer: exponent must be >= 2");
  if (p == 2) return Verdict::proven("lucas-lehmer");
  if (!is_small_prime(p)) {
    const Verdict pv = trial_division(p);
    const std::uint64_t d = pv.witness->to_u64();
    Verdict v = Verdict::composite_by("algebraic-factor");
    v.reason = "exponent " + std::to_string(p) + " is composite: 2^" + std::to_string(d) +
               " - 1 divides 2^" + std::to_string(p) + " - 1";
    return v;
  }
  if (p > policy.max_full_test_bits) {
    return Verdict::unresolved("lucas-lehmer", too_large_reason(p, policy.max_full_test_bits));
  }
  const Deadline deadline(policy.time_budget);
  mpz_class modulus;
  mpz_setbit(modulus.get_mpz_t(), p);
  modulus -= 1;
  mpz_class u = 4;
  for (std::uint64_t i = 0; i + 2 < p; ++i) {
    if (i % kDeadlineStride == 0 && deadline.expired()) {
      return Verdict::unresolved("lucas-lehmer", "time budget exceeded");
    }
    u = u * u;
    if (cmp(u, 2) < 0) u += modulus;
    u -= 2;
    reduce_mersenne(u, p, modulus);
  }
  return u == 0 ? Verdict::proven("lucas-lehmer") : Verdict::composite_by("lucas-lehmer");
}

std::optional<std::uint64_t> riesel_lucas_parameter(std::uint64_t k, std::uint64_t n) {
  const Natural value = FormDescriptor::k_two_n_minus_1(k, n).value();
  const mpz_class& N = value.mpz();
  for (std::uint64_t P = 3; P < 10000; ++P) {
    const mpz_class lo(static_cast<unsigned long>(P - 2));
    const mpz_class hi(static_cast<unsigned long>(P + 2));
    if (mpz_jacobi(lo.get_mpz_t(), N.get_mpz_t()) == 1 &&
        mpz_jacobi(hi.get_mpz_t(), N.get_mpz_t()) == -1) {
      return P;
    }
  }
  return std::nullopt;
}

Verdict llr_riesel(std::uint64_t k, std::uint64_t n, const Policy& policy) {
  if (k % 2 == 0) throw DomainError("llr_riesel: k must be odd");
  if (n >= 64 ? false : Natural(k) >= Natural::pow2(n)) {
    throw DomainError("llr_riesel: requires k < 2^n");
  }
  const FormDescriptor form = FormDescriptor::k_two_n_minus_1(k, n);
  const std::uint64_t bits = form.bit_length_estimate();
  if (bits > policy.max_full_test_bits) {
    return Verdict::unresolved("llr", too_large_reason(bits, policy.max_full_test_bits));
  }
  const Natural value = form.value();
  if (value < 7) throw DomainError("llr_riesel: requires k*2^n - 1 >= 7");
  const mpz_class& N = value.mpz();

  if (mpz_perfect_square_p(N.get_mpz_t()) != 0) {
    return Verdict::composite_by("llr-seed-search", value.isqrt());
  }

  std::optional<std::uint64_t> lucas_p;
  for (std::uint64_t P = 3; P < 10000 && !lucas_p; ++P) {
    for (std::uint64_t probe : {P - 2, P + 2}) {
      const Natural g = gcd(Natural(probe), value);
      if (g > 1 && g < value) return Verdict::composite_by("llr-seed-search", g);
    }
    const mpz_class lo(static_cast<unsigned long>(P - 2));
    const mpz_class hi(static_cast<unsigned long>(P + 2));
    if (mpz_jacobi(lo.get_mpz_t(), N.get_mpz_t()) == 1 &&
        mpz_jacobi(hi.get_mpz_t(), N.get_mpz_t()) == -1) {
      lucas_p = P;
    }
  }
  if (!lucas_p) return Verdict::unresolved("llr", "seed selection failed below P = 10000");

  const Deadline deadline(policy.time_budget);
  mpz_class u = lucas_v(k, mpz_class(static_cast<unsigned long>(*lucas_p)), N);
  for (std::uint64_t i = 0; i + 2 < n; ++i) {
    if (i % kDeadlineStride == 0 && deadline.expired()) {
      return Verdict::unresolved("llr", "time budget exceeded");
    }
    u = u * u - 2;
    mpz_mod(u.get_mpz_t(), u.get_mpz_t(), N.get_mpz_t());
  }
  return u == 0 ? Verdict::proven("llr") : Verdict::composite_by("llr");
}

Verdict pepin(std::uint64_t k, const Policy& policy) {
  if (k < 1) throw DomainError("pepin: index must be >= 1");
  if (k >= 63 || (1ull << k) + 1 > policy.max_full_test_bits) {
    const std::uint64_t bits = k >= 63 ? UINT64_MAX : (1ull << k) + 1;
    return Verdict::unresolved("pepin", too_large_reason(bits, policy.max_full_test_bits));
  }
  const Natural F = FormDescriptor::fermat(k).value();
  const Natural exponent = Natural::pow2((1ull << k) - 1);  // (F - 1) / 2
  if (Natural(3).powm(exponent, F) == F - 1) return Verdict::proven("pepin");
  Verdict sieve = small_factor_sieve(1, 1ull << k, 1, policy.sieve_bound);
  if (sieve.composite()) {
    sieve.method = "pepin";
    return sieve;
  }
  return Verdict::composite_by("pepin");
}

Verdict small_factor_sieve(std::uint64_t k, std::uint64_t n, std::int64_t delta,
                           std::uint64_t bound) {
  if (bound < 3) throw DomainError("small_factor_sieve: bound must be >= 3");
  if (bound > 0xffffffffull) throw DomainError("small_factor_sieve: bound must be < 2^32");
  if (k == 0) throw DomainError("small_factor_sieve: k must be positive");

  // Exact value when it is small enough to compare against q.
  std::optional<Natural> exact;
  if (n < 128) {
    Integer v = (Natural(k) * Natural::pow2(n)).to_integer() + static_cast<long>(delta);
    if (sgn(v) < 0) throw DomainError("small_factor_sieve: k*2^n + delta is negative");
    exact = Natural(v);
    if (*exact < 2) {
      Verdict out = Verdict::composite_by("convention");
      out.reason = "0 and 1 are not prime";
      return out;
    }
  }

  for (std::uint32_t q32 : numerics::primes_up_to(static_cast<std::uint32_t>(bound))) {
    const std::uint64_t q = q32;
    const std::uint64_t kq = k % q;
    const auto dq = static_cast<std::uint64_t>(((delta % static_cast<std::int64_t>(q)) +
                                                static_cast<std::int64_t>(q)) %
                                               static_cast<std::int64_t>(q));
    const std::uint64_t residue = (mulmod(kq, pow2_mod(n, q), q) + dq) % q;
    if (residue != 0) continue;
    if (exact && *exact == q) continue;
    return Verdict::composite_by("sieve", Natural(q));
  }
  return Verdict::unresolved("sieve", "no prime factor <= " + std::to_string(bound));
}

std::optional<Verdict> mod4_shortcut(std::uint64_t n) {
  if (n < 2) throw DomainError("mod4_shortcut: n must be >= 2");
  if (n % 4 != 1) return std::nullopt;
  return Verdict::composite_by("mod4-shortcut", Natural(5));
}

// ---------------------------------------------------------------------------
// Dispatch

Verdict is_prime(const Natural& value, const Policy& policy) {
  if (value < 2) return trial_division(value.is_zero() ? 0 : 1);
  if (value.fits_u64() && value.to_u64() <= policy.trial_division_limit) {
    return trial_division(value.to_u64());
  }
  for (std::uint32_t p : numerics::primes_up_to(1000)) {
    if (value.mod_u64(p) == 0) {
      return value == p ? Verdict::proven("trial-division")
                        : Verdict::composite_by("trial-division", Natural(p));
    }
  }
  if (value < numerics::deterministic_mr_bound()) return miller_rabin_deterministic(value);

  if (auto form = recognize_form(value)) {
    switch (form->kind()) {
      case FormKind::Mersenne: return lucas_lehmer(form->exponent(), policy);
      case FormKind::FermatForm: return pepin(form->exponent(), policy);
      case FormKind::KTwoNMinus1: return llr_riesel(form->k(), form->exponent(), policy);
      case FormKind::Generic: break;
    }
  }
  const std::uint64_t bits = value.bit_length();
  if (bits > policy.max_full_test_bits) {
    return Verdict::unresolved("dispatch", too_large_reason(bits, policy.max_full_test_bits));
  }
  return miller_rabin_random(value, policy.random_rounds, policy.seed);
}

Verdict is_prime(const FormDescriptor& form, const Policy& policy) {
  if (form.bit_length_estimate() <= 128) return is_prime(form.value(), policy);
  switch (form.kind()) {
    case FormKind::Mersenne: return lucas_lehmer(form.exponent(), policy);
    case FormKind::FermatForm: return pepin(form.exponent(), policy);
    case FormKind::KTwoNMinus1:
      if (form.k() % 2 == 1) return llr_riesel(form.k(), form.exponent(), policy);
      break;
    case FormKind::Generic: break;
  }
  if (form.bit_length_estimate() > policy.max_full_test_bits) {
    return Verdict::unresolved("dispatch", too_large_reason(form.bit_length_estimate(),
                                                            policy.max_full_test_bits));
  }
  return is_prime(form.value(), policy);
}

}  // namespace amicable::primality
