#include <set>

#include "amicable/numerics.hpp"
#include "amicable/primality.hpp"
#include "doctest.h"
#include "test_support.hpp"

using amicable::DomainError;
using amicable::Natural;
namespace pr = amicable::primality;
using pr::FormDescriptor;
using pr::Status;

namespace {

// Every composite verdict that carries a witness must carry a proper divisor.
void check_witness(const pr::Verdict& v, const Natural& value) {
  if (!v.witness) return;
  CHECK(v.composite());
  CHECK(*v.witness > 1);
  CHECK(*v.witness < value);
  CHECK(value.divisible_by(*v.witness));
}

const std::set<std::uint64_t> kMersenneExponentsBelow128 = {2,  3,  5,  7,  13, 17,
                                                            19, 31, 61, 89, 107, 127};

}  // namespace

TEST_CASE("status tokens round-trip") {
  for (Status s : {Status::ProvenPrime, Status::Composite, Status::ProbablePrime,
                   Status::Unresolved}) {
    CHECK(pr::status_from_string(pr::to_string(s)) == s);
  }
  CHECK_THROWS_AS(pr::status_from_string("maybe"), DomainError);
}

TEST_CASE("0 and 1 are composite by convention with a reason") {
  for (std::uint64_t v : {0ull, 1ull}) {
    const auto verdict = pr::is_prime(Natural(v));
    CHECK(verdict.composite());
    CHECK_FALSE(verdict.witness.has_value());
    CHECK(verdict.reason.has_value());
  }
}

TEST_CASE("trial division agrees with the sieve of primes") {
  const auto primes = amicable::numerics::primes_up_to(20000);
  const std::set<std::uint32_t> prime_set(primes.begin(), primes.end());
  for (std::uint64_t v = 2; v <= 20000; ++v) {
    const auto verdict = pr::trial_division(v);
    REQUIRE(verdict.decided());
    REQUIRE(verdict.proven_prime() == (prime_set.count(static_cast<std::uint32_t>(v)) == 1));
    check_witness(verdict, Natural(v));
  }
}

TEST_CASE("deterministic Miller-Rabin agrees with trial division") {
  for (int i = 0; i < 3000; ++i) {
    const std::uint64_t v = amicable::testing::uniform(2, 1ull << 40);
    REQUIRE(pr::miller_rabin_deterministic(Natural(v)).proven_prime() ==
            pr::trial_division(v).proven_prime());
  }
  CHECK_THROWS_AS(pr::miller_rabin_deterministic(Natural(1)), DomainError);
  CHECK_THROWS_AS(pr::miller_rabin_deterministic(amicable::numerics::deterministic_mr_bound()),
                  DomainError);
}

TEST_CASE("deterministic Miller-Rabin rejects strong pseudoprimes to many bases") {
  // Strong pseudoprime to the first nine prime bases.
  CHECK(pr::miller_rabin_deterministic(Natural::from_decimal("3825123056546413051")).composite());
  // Strong pseudoprime to bases up to 37 (Sorenson and Webster).
  CHECK(pr::miller_rabin_deterministic(Natural::from_decimal("318665857834031151167461"))
            .composite());
}

TEST_CASE("randomized Miller-Rabin is reproducible for a fixed seed") {
  const Natural p = Natural::pow2(127) - 1;
  const auto v1 = pr::miller_rabin_random(p, 20, 42);
  const auto v2 = pr::miller_rabin_random(p, 20, 42);
  CHECK(v1 == v2);
  CHECK(v1.status == Status::ProbablePrime);
  CHECK(v1.rounds == 20u);
  CHECK(pr::miller_rabin_random(Natural::pow2(128) + 1, 20, 7).composite());
}

TEST_CASE("Lucas-Lehmer agrees with the known Mersenne exponents below 128") {
  for (std::uint64_t p = 2; p < 128; ++p) {
    const auto v = pr::lucas_lehmer(p);
    CAPTURE(p);
    REQUIRE(v.decided());
    REQUIRE(v.proven_prime() == (kMersenneExponentsBelow128.count(p) == 1));
  }
  const auto composite_exponent = pr::lucas_lehmer(11 * 2);
  CHECK(composite_exponent.method == "algebraic-factor");
  CHECK(composite_exponent.reason.has_value());
  CHECK_THROWS_AS(pr::lucas_lehmer(1), DomainError);
}

TEST_CASE("Lucas-Lehmer proves the larger tabulated exponents") {
  for (std::uint64_t p : {521ull, 607ull, 1279ull, 2203ull}) {
    CHECK(pr::lucas_lehmer(p).proven_prime());
  }
  CHECK(pr::lucas_lehmer(523).composite());
}

TEST_CASE("LLR agrees with Miller-Rabin for several k") {
  for (std::uint64_t k : {1ull, 3ull, 5ull, 7ull, 9ull, 15ull, 27ull}) {
    for (std::uint64_t n = 2; n <= 200; ++n) {
      if (Natural(k) >= Natural::pow2(n)) continue;
      const Natural value = FormDescriptor::k_two_n_minus_1(k, n).value();
      if (value < 7) continue;
      const auto llr = pr::llr_riesel(k, n);
      const auto reference = pr::miller_rabin_random(value, 32, 1);
      CAPTURE(k);
      CAPTURE(n);
      REQUIRE(llr.decided());
      REQUIRE(llr.proven_prime() == (reference.status == Status::ProbablePrime));
      check_witness(llr, value);
    }
  }
}

TEST_CASE("LLR Lucas parameter satisfies both Jacobi conditions") {
  for (std::uint64_t n = 3; n <= 64; ++n) {
    const auto P = pr::riesel_lucas_parameter(3, n);
    REQUIRE(P.has_value());
    const Natural N = FormDescriptor::k_two_n_minus_1(3, n).value();
    const mpz_class lo(static_cast<unsigned long>(*P - 2));
    const mpz_class hi(static_cast<unsigned long>(*P + 2));
    CHECK(mpz_jacobi(lo.get_mpz_t(), N.mpz().get_mpz_t()) == 1);
    CHECK(mpz_jacobi(hi.get_mpz_t(), N.mpz().get_mpz_t()) == -1);
  }
}

TEST_CASE("LLR preconditions") {
  CHECK_THROWS_AS(pr::llr_riesel(4, 10), DomainError);
  CHECK_THROWS_AS(pr::llr_riesel(17, 4), DomainError);
  pr::Policy small;
  small.max_full_test_bits = 100;
  CHECK(pr::llr_riesel(3, 200, small).status == Status::Unresolved);
}

TEST_CASE("Pepin proves F0..F4 prime and factors F5") {
  for (std::uint64_t k = 1; k <= 4; ++k) CHECK(pr::pepin(k).proven_prime());
  const auto f5 = pr::pepin(5);
  CHECK(f5.composite());
  REQUIRE(f5.witness.has_value());
  CHECK(*f5.witness == 641);
  CHECK(pr::pepin(6).composite());
  CHECK_THROWS_AS(pr::pepin(0), DomainError);
}

TEST_CASE("small-factor sieve witnesses divide the value") {
  for (std::uint64_t n = 2; n < 120; ++n) {
    const auto v = pr::small_factor_sieve(3, n, -1, 100000);
    const Natural value = FormDescriptor::k_two_n_minus_1(3, n).value();
    check_witness(v, value);
    if (v.composite()) {
      CHECK(v.method == "sieve");
    } else {
      CHECK(v.status == Status::Unresolved);
    }
  }
  // 3*2^1 - 1 = 5 is prime even though 5 divides it.
  CHECK(pr::small_factor_sieve(3, 1, -1, 100).status == Status::Unresolved);
  // 3*2^5 - 1 = 95 = 5 * 19.
  CHECK(*pr::small_factor_sieve(3, 5, -1, 100).witness == 5);
  CHECK(*pr::small_factor_sieve(1, 32, 1, 1000).witness == 641);
  CHECK_THROWS_AS(pr::small_factor_sieve(3, 5, -1, 2), DomainError);
}

TEST_CASE("sieve reaches huge exponents without building the number") {
  const auto v = pr::small_factor_sieve(3, 82589932, -1, 1000);
  REQUIRE(v.composite());
  CHECK(*v.witness == 11);
}

TEST_CASE("mod-4 shortcut") {
  for (std::uint64_t n = 2; n < 400; ++n) {
    const auto shortcut = pr::mod4_shortcut(n);
    CHECK(shortcut.has_value() == (n % 4 == 1));
    if (shortcut) {
      CHECK(shortcut->method == "mod4-shortcut");
      CHECK(FormDescriptor::k_two_n_minus_1(3, n).value().mod_u64(5) == 0);
    }
  }
  CHECK_THROWS_AS(pr::mod4_shortcut(1), DomainError);
}

TEST_CASE("form descriptors round-trip through keys and values") {
  const FormDescriptor forms[] = {FormDescriptor::k_two_n_minus_1(3, 4421),
                                  FormDescriptor::mersenne(127), FormDescriptor::fermat(5),
                                  FormDescriptor::generic(Natural(2024))};
  for (const auto& f : forms) {
    CHECK(FormDescriptor::from_key(f.key()) == f);
    CHECK(f.value().bit_length() <= f.bit_length_estimate());
  }
  CHECK(forms[0].key() == "riesel 3 4421");
  CHECK(forms[0].expression() == "3*2^4421 - 1");
  CHECK_THROWS_AS(FormDescriptor::from_key("riesel 3"), DomainError);
  CHECK_THROWS_AS(FormDescriptor::from_key("banana 1"), DomainError);
}

TEST_CASE("recognize_form identifies the special shapes") {
  auto m = pr::recognize_form(Natural::pow2(89) - 1);
  REQUIRE(m);
  CHECK(m->kind() == pr::FormKind::Mersenne);
  auto f = pr::recognize_form(Natural::pow2(64) + 1);
  REQUIRE(f);
  CHECK(f->kind() == pr::FormKind::FermatForm);
  auto r = pr::recognize_form(FormDescriptor::k_two_n_minus_1(3, 300).value());
  REQUIRE(r);
  CHECK(r->kind() == pr::FormKind::KTwoNMinus1);
  CHECK(r->k() == 3);
  CHECK(r->exponent() == 300);
  CHECK_FALSE(pr::recognize_form(Natural(2024)).has_value());
}

TEST_CASE("dispatcher routes forms and respects the bit cap") {
  CHECK(pr::is_prime(FormDescriptor::mersenne(521)).method == "lucas-lehmer");
  CHECK(pr::is_prime(Natural::pow2(521) - 1).method == "lucas-lehmer");
  CHECK(pr::is_prime(FormDescriptor::k_two_n_minus_1(3, 2208)).method == "llr");
  pr::Policy tight;
  tight.max_full_test_bits = 256;
  const auto big = pr::is_prime(FormDescriptor::k_two_n_minus_1(3, 4421), tight);
  CHECK(big.status == Status::Unresolved);
  CHECK(big.reason.has_value());
  // A generic value above the deterministic bound falls to randomized rounds.
  const Natural generic = Natural::from_decimal("1000000000000000000000000000057");
  const auto v = pr::is_prime(generic);
  CHECK((v.status == Status::ProbablePrime || v.composite()));
}

TEST_CASE("dispatcher witnesses on random composites") {
  for (int i = 0; i < 300; ++i) {
    const Natural a = amicable::testing::random_bits(static_cast<unsigned>(
        amicable::testing::uniform(2, 40)));
    const Natural b = amicable::testing::random_bits(static_cast<unsigned>(
        amicable::testing::uniform(2, 40)));
    const Natural product = a * b;
    const auto v = pr::is_prime(product);
    CHECK(v.composite());
    check_witness(v, product);
  }
}
