#pragma once

// Shifted factorials, q-Pochhammer symbols and terminating (basic)
// hypergeometric sums. Sums are evaluated by accumulating exact term ratios,
// so no factorial ever overflows and a vanishing denominator factor is
// detected at the offending index.

#include <span>
#include <stdexcept>
#include <vector>

#include "xdop/scalar.hpp"

namespace xdop {

struct ZeroDenominatorTerm : std::runtime_error {
  ZeroDenominatorTerm(int k)
      : std::runtime_error("hypergeometric denominator factor vanishes at k=" +
                           std::to_string(k)) {}
};

// (a)_n = a(a+1)...(a+n-1), empty product = 1
template <class S>
S shifted_factorial(const S& a, int n) {
  S p(1);
  for (int k = 0; k < n; ++k) p *= a + k;
  return p;
}

// (a;q)_n = prod_{k<n} (1 - a q^k), empty product = 1
template <class S>
S q_pochhammer(const S& a, const S& q, int n) {
  S p(1), aq = a;
  for (int k = 0; k < n; ++k) {
    p *= S(1) - aq;
    aq *= q;
  }
  return p;
}

// Terminating rFs(num; den | z): sum_{k=0}^{top_n} (num)_k/((den)_k k!) z^k.
// The caller passes the termination index; one numerator entry is expected to
// be -top_n (not scanned for).
template <class S>
S hyper_f(std::span<const S> num, std::span<const S> den, const S& z, int top_n) {
  S term(1), total(1);
  for (int k = 0; k < top_n; ++k) {
    S ratio = z;
    for (const S& a : num) ratio *= a + k;
    for (const S& b : den) {
      S f = b + k;
      if (f == 0) throw ZeroDenominatorTerm(k + 1);
      ratio /= f;
    }
    ratio /= S(k + 1);
    term *= ratio;
    total += term;
  }
  return total;
}

// Terminating r phi s(num; den | q; z), r = num.size(), s = den.size():
//   sum_k (num;q)_k / ((den;q)_k (q;q)_k) [(-1)^k q^(k(k-1)/2)]^{1+s-r} z^k.
// One numerator entry is expected to be q^{-top_n}.
template <class S>
S hyper_phi(std::span<const S> num, std::span<const S> den, const S& q, const S& z,
            int top_n) {
  const int twist = 1 + static_cast<int>(den.size()) - static_cast<int>(num.size());
  S term(1), total(1), qk(1);
  for (int k = 0; k < top_n; ++k) {
    S ratio = z;
    for (const S& a : num) ratio *= S(1) - a * qk;
    for (const S& b : den) {
      S f = S(1) - b * qk;
      if (f == 0) throw ZeroDenominatorTerm(k + 1);
      ratio /= f;
    }
    S f = S(1) - q * qk;
    if (f == 0) throw ZeroDenominatorTerm(k + 1);
    ratio /= f;
    // ((-1)^k q^C(k,2)) ratio from k to k+1 is -q^k, raised to 1+s-r
    if (twist > 0) {
      for (int t = 0; t < twist; ++t) ratio *= -qk;
    } else if (twist < 0) {
      for (int t = 0; t < -twist; ++t) ratio /= -qk;
    }
    term *= ratio;
    total += term;
    qk *= q;
  }
  return total;
}

// Reference evaluation through explicit Pochhammer quotients; used by tests as
// the independent route against the term-ratio path.
template <class S>
S hyper_f_naive(std::span<const S> num, std::span<const S> den, const S& z, int top_n) {
  S total(0);
  for (int k = 0; k <= top_n; ++k) {
    S t = pow_int(z, k);
    for (const S& a : num) t *= shifted_factorial(a, k);
    for (const S& b : den) t /= shifted_factorial(b, k);
    t /= shifted_factorial(S(1), k);
    total += t;
  }
  return total;
}

}  // namespace xdop
