#pragma once

#include <compare>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include <gmpxx.h>

namespace amicable {

/// Signed exact integer, used only where a quantity may legitimately be
/// negative (residuals). Everything else is a Natural.
using Integer = mpz_class;

/// Raised when an operation is asked for a value outside its domain
/// (sigma(0), a negative difference, an index below a rule's range).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Arbitrary-precision nonnegative integer.
///
/// Thin value wrapper over GMP that enforces nonnegativity: subtraction
/// that would go below zero throws DomainError instead of wrapping or
/// silently producing a signed value. Equality is on the mathematical
/// value, so there is a single observable representation per number.
class Natural {
 public:
  Natural() = default;

  template <std::integral T>
  Natural(T v) {  // NOLINT(google-explicit-constructor)
    if constexpr (std::is_signed_v<T>) {
      if (v < 0) throw DomainError("Natural: negative value");
      value_ = static_cast<unsigned long>(static_cast<std::make_unsigned_t<T>>(v));
    } else {
      static_assert(sizeof(T) <= sizeof(unsigned long));
      value_ = static_cast<unsigned long>(v);
    }
  }

  /// Adopts a GMP integer; throws DomainError if it is negative.
  explicit Natural(mpz_class v);

  /// Parses a decimal string of digits only (no sign, no whitespace).
  static Natural from_decimal(std::string_view text);

  /// 2^exponent.
  static Natural pow2(std::uint64_t exponent);

  const mpz_class& mpz() const noexcept { return value_; }

  std::string to_string() const;
  std::size_t bit_length() const noexcept;
  std::size_t decimal_digits() const;
  bool is_zero() const noexcept { return sgn(value_) == 0; }
  bool is_odd() const noexcept { return mpz_odd_p(value_.get_mpz_t()) != 0; }
  bool fits_u64() const noexcept;
  std::uint64_t to_u64() const;

  Natural pow(std::uint64_t exponent) const;
  /// (this ^ exponent) mod modulus.
  Natural powm(const Natural& exponent, const Natural& modulus) const;
  /// Remainder modulo a machine word, without building a Natural.
  std::uint64_t mod_u64(std::uint64_t modulus) const;
  bool divisible_by(const Natural& d) const;
  /// Integer square root (floor).
  Natural isqrt() const;

  Natural& operator+=(const Natural& o);
  Natural& operator-=(const Natural& o);
  Natural& operator*=(const Natural& o);
  Natural& operator/=(const Natural& o);
  Natural& operator%=(const Natural& o);
  Natural& operator<<=(std::uint64_t bits);
  Natural& operator>>=(std::uint64_t bits);

  friend Natural operator+(Natural a, const Natural& b) { return a += b; }
  friend Natural operator-(Natural a, const Natural& b) { return a -= b; }
  friend Natural operator*(Natural a, const Natural& b) { return a *= b; }
  friend Natural operator/(Natural a, const Natural& b) { return a /= b; }
  friend Natural operator%(Natural a, const Natural& b) { return a %= b; }
  friend Natural operator<<(Natural a, std::uint64_t bits) { return a <<= bits; }
  friend Natural operator>>(Natural a, std::uint64_t bits) { return a >>= bits; }

  friend bool operator==(const Natural& a, const Natural& b) noexcept {
    return cmp(a.value_, b.value_) == 0;
  }
  friend std::strong_ordering operator<=>(const Natural& a, const Natural& b) noexcept {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  /// Signed view, for mixing with Integer residuals.
  Integer to_integer() const { return value_; }

 private:
  mpz_class value_{0};
};

/// Quotient and remainder in one step.
std::pair<Natural, Natural> divmod(const Natural& a, const Natural& b);
Natural gcd(const Natural& a, const Natural& b);

std::ostream& operator<<(std::ostream& os, const Natural& n);

}  // namespace amicable

template <>
struct std::hash<amicable::Natural> {
  std::size_t operator()(const amicable::Natural& n) const noexcept;
};
