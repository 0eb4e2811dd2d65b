#include "amicable/natural.hpp"

#include <ostream>

namespace amicable {

Natural::Natural(mpz_class v) : value_(std::move(v)) {
  if (sgn(value_) < 0) throw DomainError("Natural: negative value");
}

Natural Natural::from_decimal(std::string_view text) {
  if (text.empty()) throw DomainError("Natural: empty numeral");
  for (char ch : text) {
    if (ch < '0' || ch > '9') {
      throw DomainError("Natural: not a decimal numeral: '" + std::string(text) + "'");
    }
  }
  return Natural(mpz_class(std::string(text), 10));
}

Natural Natural::pow2(std::uint64_t exponent) {
  Natural out;
  mpz_setbit(out.value_.get_mpz_t(), exponent);
  return out;
}

std::string Natural::to_string() const { return value_.get_str(10); }

std::size_t Natural::bit_length() const noexcept {
  if (is_zero()) return 0;
  return mpz_sizeinbase(value_.get_mpz_t(), 2);
}

std::size_t Natural::decimal_digits() const {
  // mpz_sizeinbase may overshoot by one for base 10.
  if (bit_length() < 4096) return to_string().size();
  std::size_t estimate = mpz_sizeinbase(value_.get_mpz_t(), 10);
  mpz_class bound;
  mpz_ui_pow_ui(bound.get_mpz_t(), 10, estimate - 1);
  return cmp(value_, bound) < 0 ? estimate - 1 : estimate;
}

bool Natural::fits_u64() const noexcept { return bit_length() <= 64; }

std::uint64_t Natural::to_u64() const {
  if (!fits_u64()) throw DomainError("Natural: value does not fit in 64 bits");
  static_assert(sizeof(unsigned long) == 8);
  return mpz_get_ui(value_.get_mpz_t());
}

Natural Natural::pow(std::uint64_t exponent) const {
  Natural out;
  mpz_pow_ui(out.value_.get_mpz_t(), value_.get_mpz_t(), exponent);
  return out;
}

Natural Natural::powm(const Natural& exponent, const Natural& modulus) const {
  if (modulus.is_zero()) throw DomainError("Natural::powm: zero modulus");
  Natural out;
  mpz_powm(out.value_.get_mpz_t(), value_.get_mpz_t(), exponent.value_.get_mpz_t(),
           modulus.value_.get_mpz_t());
  return out;
}

std::uint64_t Natural::mod_u64(std::uint64_t modulus) const {
  if (modulus == 0) throw DomainError("Natural::mod_u64: zero modulus");
  return mpz_fdiv_ui(value_.get_mpz_t(), modulus);
}

bool Natural::divisible_by(const Natural& d) const {
  if (d.is_zero()) return is_zero();
  return mpz_divisible_p(value_.get_mpz_t(), d.value_.get_mpz_t()) != 0;
}

Natural Natural::isqrt() const {
  Natural out;
  mpz_sqrt(out.value_.get_mpz_t(), value_.get_mpz_t());
  return out;
}

Natural& Natural::operator+=(const Natural& o) {
  value_ += o.value_;
  return *this;
}

Natural& Natural::operator-=(const Natural& o) {
  if (cmp(value_, o.value_) < 0) throw DomainError("Natural: subtraction below zero");
  value_ -= o.value_;
  return *this;
}

Natural& Natural::operator*=(const Natural& o) {
  value_ *= o.value_;
  return *this;
}

Natural& Natural::operator/=(const Natural& o) {
  if (o.is_zero()) throw DomainError("Natural: division by zero");
  mpz_tdiv_q(value_.get_mpz_t(), value_.get_mpz_t(), o.value_.get_mpz_t());
  return *this;
}

Natural& Natural::operator%=(const Natural& o) {
  if (o.is_zero()) throw DomainError("Natural: division by zero");
  mpz_tdiv_r(value_.get_mpz_t(), value_.get_mpz_t(), o.value_.get_mpz_t());
  return *this;
}

Natural& Natural::operator<<=(std::uint64_t bits) {
  mpz_mul_2exp(value_.get_mpz_t(), value_.get_mpz_t(), bits);
  return *this;
}

Natural& Natural::operator>>=(std::uint64_t bits) {
  mpz_tdiv_q_2exp(value_.get_mpz_t(), value_.get_mpz_t(), bits);
  return *this;
}

std::pair<Natural, Natural> divmod(const Natural& a, const Natural& b) {
  if (b.is_zero()) throw DomainError("Natural: division by zero");
  mpz_class q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.mpz().get_mpz_t(), b.mpz().get_mpz_t());
  return {Natural(std::move(q)), Natural(std::move(r))};
}

Natural gcd(const Natural& a, const Natural& b) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.mpz().get_mpz_t(), b.mpz().get_mpz_t());
  return Natural(std::move(g));
}

std::ostream& operator<<(std::ostream& os, const Natural& n) { return os << n.to_string(); }

}  // namespace amicable

std::size_t std::hash<amicable::Natural>::operator()(const amicable::Natural& n) const noexcept {
  const mpz_srcptr z = n.mpz().get_mpz_t();
  std::size_t h = 1469598103934665603ull;
  const std::size_t limbs = mpz_size(z);
  for (std::size_t i = 0; i < limbs; ++i) {
    h ^= static_cast<std::size_t>(mpz_getlimbn(z, static_cast<mp_size_t>(i)));
    h *= 1099511628211ull;
  }
  return h;
}
