#include "amicable/sequences.hpp"

#include <algorithm>
#include <stdexcept>

namespace amicable::sequences {

namespace {

void require_index(Index n, Index min, const char* what) {
  if (n < min) {
    throw DomainError(std::string(what) + ": index must be >= " + std::to_string(min) +
                      ", got " + std::to_string(n));
  }
}

Natural p2(Index e) { return Natural::pow2(e); }

}  // namespace

Natural mersenne_number(Index n) { return p2(n) - 1; }

ThabitTriple thabit_triple(Index n) {
  require_index(n, 1, "thabit_triple");
  ThabitTriple t;
  t.n = n;
  t.a = 3 * p2(n - 1) - 1;
  t.b = 3 * p2(n) - 1;
  t.c = 9 * p2(2 * n - 1) - 1;
  t.r = p2(n) * t.a * t.b;
  t.s = p2(n) * t.c;
  t.m_next = mersenne_number(n + 1);
  return t;
}

Natural r_expanded(Index n) {
  require_index(n, 1, "r_expanded");
  return 9 * p2(3 * n - 1) - 9 * p2(2 * n - 1) + p2(n);
}

Natural s_expanded(Index n) {
  require_index(n, 1, "s_expanded");
  return 9 * p2(3 * n - 1) - p2(n);
}

bool IbnSinaIdentities::all_hold() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.holds(); });
}

IbnSinaIdentities ibn_sina_identities(Index n) {
  require_index(n, 1, "ibn_sina_identities");
  const ThabitTriple t = thabit_triple(n);
  IbnSinaIdentities out;
  out.n = n;
  out.checks[0] = {"m_{n+1} + 2^n = b_n", t.m_next + p2(n), t.b};
  out.checks[1] = {"m_{n+1} - 2^(n-1) = a_n", t.m_next - p2(n - 1), t.a};
  out.checks[2] = {"2^n a_n b_n = r_n", p2(n) * t.a * t.b, t.r};
  out.checks[3] = {"2^n (a_n + b_n) + r_n = s_n", p2(n) * (t.a + t.b) + t.r, t.s};
  return out;
}

BaghdadiFirstFamily baghdadi_first(Index n) {
  require_index(n, 2, "baghdadi_first");
  BaghdadiFirstFamily f;
  f.n = n;
  f.alpha = p2(n) + 1;
  f.beta = 2 * f.alpha + 1;
  f.gamma = f.beta - p2(n);
  f.lambda = p2(n) * f.alpha * f.beta;
  f.mu = p2(n) * (f.alpha + f.beta) + f.lambda;

  const Natural beta_expanded = p2(n + 1) + 3;
  const Natural gamma_expanded = p2(n) + 3;
  const Natural lambda_expanded = p2(3 * n + 1) + 5 * p2(2 * n) + 3 * p2(n);
  const Natural mu_expanded = p2(3 * n + 1) + 8 * p2(2 * n) + 7 * p2(n);
  if (f.beta != beta_expanded || f.gamma != gamma_expanded || f.lambda != lambda_expanded ||
      f.mu != mu_expanded) {
    throw std::logic_error("baghdadi_first: factored and expanded forms disagree at n = " +
                           std::to_string(n));
  }
  return f;
}

BaghdadiGeneralFamily baghdadi_general(Index n) {
  require_index(n, 1, "baghdadi_general");
  BaghdadiGeneralFamily g;
  g.n = n;
  const Natural tail = p2(n) - 1;  // 2^(n-1) + ... + 2 + 1
  g.a = 5 * p2(n) + tail;
  g.b = 11 * p2(n) + tail;
  g.m = g.b - p2(n + 2);
  g.r = p2(n + 2) * g.a * g.b;
  g.s = p2(n + 2) * (g.a + g.b) + g.r;
  for (const auto& check : baghdadi_shift_identities(n)) {
    if (!check.holds()) {
      throw std::logic_error("baghdadi_general: shift identity '" + check.label +
                             "' fails at n = " + std::to_string(n));
    }
  }
  return g;
}

std::vector<IdentityCheck> baghdadi_shift_identities(Index n) {
  require_index(n, 1, "baghdadi_shift_identities");
  const Natural tail = p2(n) - 1;
  const Natural a = 5 * p2(n) + tail;
  const Natural b = 11 * p2(n) + tail;
  const Natural m = b - p2(n + 2);
  const Natural r = p2(n + 2) * a * b;
  const Natural s = p2(n + 2) * (a + b) + r;
  const ThabitTriple t = thabit_triple(n + 2);
  return {
      {"A_n = a_{n+2}", a, t.a},
      {"B_n = b_{n+2}", b, t.b},
      {"M_n = m_{n+3}", m, mersenne_number(n + 3)},
      {"R_n = r_{n+2}", r, t.r},
      {"S_n = s_{n+2}", s, t.s},
  };
}

Integer conjecture2_residual(Index n) {
  require_index(n, 2, "conjecture2_residual");
  return p2(2 * n).to_integer() - p2(n + 1).to_integer() - 8;
}

FermatNumber fermat_number(Index n) { return {n, p2(n) + 1}; }

}  // namespace amicable::sequences
