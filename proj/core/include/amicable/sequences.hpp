#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "amicable/natural.hpp"

namespace amicable::sequences {

using Index = std::uint64_t;

/// m_n = 2^n - 1.
Natural mersenne_number(Index n);

/// The closed-form family behind Thabit's rule:
///   a = 3*2^(n-1) - 1, b = 3*2^n - 1, c = 9*2^(2n-1) - 1,
///   r = 2^n*a*b,       s = 2^n*c,     m_next = 2^(n+1) - 1.
struct ThabitTriple {
  Index n = 0;
  Natural a, b, c, r, s, m_next;
};

ThabitTriple thabit_triple(Index n);

/// r_n and s_n by their expanded polynomial forms, 9*2^(3n-1) - 9*2^(2n-1) + 2^n
/// and 9*2^(3n-1) - 2^n. Independent of thabit_triple.
Natural r_expanded(Index n);
Natural s_expanded(Index n);

struct IdentityCheck {
  std::string label;
  Natural lhs;
  Natural rhs;
  bool holds() const { return lhs == rhs; }
};

/// The four identities behind Ibn Sina's construction:
///   m_{n+1} + 2^n = b, m_{n+1} - 2^(n-1) = a, 2^n*a*b = r, 2^n(a+b) + r = s.
struct IbnSinaIdentities {
  Index n = 0;
  std::array<IdentityCheck, 4> checks;
  bool all_hold() const;
};

IbnSinaIdentities ibn_sina_identities(Index n);

/// The family used to derive the first pair (220, 284) step by step:
/// alpha = 2^n + 1, beta = 2*alpha + 1, gamma = beta - 2^n,
/// lambda = 2^n*alpha*beta, mu = 2^n(alpha + beta) + lambda. n >= 2.
struct BaghdadiFirstFamily {
  Index n = 0;
  Natural alpha, beta, gamma, lambda, mu;
};

/// Throws std::logic_error if the factored and expanded forms disagree.
BaghdadiFirstFamily baghdadi_first(Index n);

/// The iterated general rule, seeded by 5 and 11 (n = 0, rejected):
///   a = 5*2^n + (2^n - 1) = 6*2^n - 1, b = 11*2^n + (2^n - 1) = 12*2^n - 1,
///   m = b - 2^(n+2) = 2^(n+3) - 1, r = 2^(n+2)*a*b, s = 2^(n+2)(a + b) + r.
/// The multiplier is the power of two in the rank of a and b (8 for 11, 23).
/// Each member coincides with the Thabit family shifted by two (m by three).
struct BaghdadiGeneralFamily {
  Index n = 0;
  Natural a, b, m, r, s;
};

/// Throws std::logic_error if any shift identity fails.
BaghdadiGeneralFamily baghdadi_general(Index n);

/// Per-identity comparison of baghdadi_general(n) against thabit_triple(n + 2).
std::vector<IdentityCheck> baghdadi_shift_identities(Index n);

/// 2^(2n) - 2^(n+1) - 8, the residual of sigma(lambda_n) = mu_n once alpha,
/// beta are assumed prime. Zero only at n = 2.
Integer conjecture2_residual(Index n);

struct FermatNumber {
  Index n = 0;
  Natural value;
  /// True when n is 0 or a power of two, i.e. value is F_k for some k.
  bool classical() const noexcept { return n == 0 || (n & (n - 1)) == 0; }
};

FermatNumber fermat_number(Index n);

}  // namespace amicable::sequences
