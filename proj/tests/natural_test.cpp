#include <unordered_set>

#include "amicable/natural.hpp"
#include "doctest.h"
#include "test_support.hpp"

using amicable::DomainError;
using amicable::Natural;

TEST_CASE("decimal parsing accepts digits only") {
  CHECK(Natural::from_decimal("0") == 0);
  CHECK(Natural::from_decimal("9437056") == 9437056);
  CHECK(Natural::from_decimal("340282366920938463463374607431768211456") == Natural::pow2(128));
  CHECK_THROWS_AS(Natural::from_decimal(""), DomainError);
  CHECK_THROWS_AS(Natural::from_decimal("-5"), DomainError);
  CHECK_THROWS_AS(Natural::from_decimal("12a"), DomainError);
  CHECK_THROWS_AS(Natural::from_decimal(" 12"), DomainError);
}

TEST_CASE("negative construction and underflow are rejected") {
  CHECK_THROWS_AS(Natural(-1), DomainError);
  CHECK_THROWS_AS(Natural(3) - Natural(4), DomainError);
  CHECK(Natural(4) - Natural(4) == 0);
}

TEST_CASE("size queries") {
  CHECK(Natural(0).bit_length() == 0);
  CHECK(Natural(1).bit_length() == 1);
  CHECK(Natural::pow2(100).bit_length() == 101);
  CHECK(Natural(0).decimal_digits() == 1);
  CHECK(Natural(999).decimal_digits() == 3);
  CHECK(Natural(1000).decimal_digits() == 4);
  CHECK(Natural::pow2(64).decimal_digits() == 20);
  CHECK(Natural::pow2(63).fits_u64());
  CHECK_FALSE(Natural::pow2(64).fits_u64());
  CHECK_THROWS_AS(Natural::pow2(64).to_u64(), DomainError);
}

TEST_CASE("division by zero throws") {
  CHECK_THROWS_AS(Natural(5) / Natural(0), DomainError);
  CHECK_THROWS_AS(Natural(5) % Natural(0), DomainError);
}

TEST_CASE("arithmetic agrees with 64-bit arithmetic on random operands") {
  for (int i = 0; i < 2000; ++i) {
    const std::uint64_t a = amicable::testing::uniform(0, 1ull << 31);
    const std::uint64_t b = amicable::testing::uniform(1, 1ull << 31);
    CHECK(Natural(a) + Natural(b) == a + b);
    CHECK(Natural(a) * Natural(b) == a * b);
    CHECK(Natural(a) / Natural(b) == a / b);
    CHECK(Natural(a) % Natural(b) == a % b);
    CHECK(Natural(a).mod_u64(b) == a % b);
    CHECK((Natural(a) < Natural(b)) == (a < b));
  }
}

TEST_CASE("division identity holds for large operands") {
  for (int i = 0; i < 200; ++i) {
    const Natural a = amicable::testing::random_bits(static_cast<unsigned>(
        amicable::testing::uniform(2, 600)));
    const Natural b = amicable::testing::random_bits(static_cast<unsigned>(
        amicable::testing::uniform(2, 300)));
    CHECK((a / b) * b + a % b == a);
    CHECK(a % b < b);
  }
}

TEST_CASE("isqrt is the floor square root") {
  for (int i = 0; i < 200; ++i) {
    const Natural a = amicable::testing::random_bits(static_cast<unsigned>(
        amicable::testing::uniform(1, 400)));
    const Natural r = a.isqrt();
    CHECK(r * r <= a);
    CHECK((r + 1) * (r + 1) > a);
  }
}

TEST_CASE("powm and shifts") {
  CHECK(Natural(3).powm(Natural(4), Natural(1000)) == 81);
  CHECK(Natural(2).pow(10) == 1024);
  CHECK((Natural(1) << 70) == Natural::pow2(70));
  CHECK((Natural::pow2(70) >> 69) == 2);
  CHECK_THROWS_AS(Natural(3).powm(Natural(2), Natural(0)), DomainError);
}

TEST_CASE("gcd and divisibility") {
  CHECK(gcd(Natural(2024), Natural(2296)) == 8);
  CHECK(Natural(2024).divisible_by(Natural(23)));
  CHECK_FALSE(Natural(2024).divisible_by(Natural(7)));
}

TEST_CASE("hash is consistent with equality") {
  std::unordered_set<Natural> set;
  set.insert(Natural::from_decimal("123456789012345678901234567890"));
  CHECK(set.count(Natural::from_decimal("123456789012345678901234567890")) == 1);
  CHECK(set.count(Natural(1)) == 0);
}
