#pragma once

// Certified geometric tail bounds for the little q-Jacobi sums. The weight
// ratio phi0^2(x+1)/phi0^2(x) = aq (1-bq^{x+1})/(1-q^{x+1}) is bounded by
// r = aq/(1-q^{X+2}) for x > X, and polynomial factors are bounded on the
// eta range [0,1) by their coefficient abs-sums.

#include "xdop/base_system.hpp"

namespace xdop {

// sum_{x>X} phi0^2(x; mu) <= phi0^2(X+1; mu)/(1-r); false when r >= 1.
template <class S>
bool weight_tail_bound(const FamilySpec<S>& mu, int X, S& bound) {
  S r = mu.lam[0] * mu.q / (S(1) - pow_int(mu.q, X + 2));
  if (!(r < 1)) return false;
  bound = weight_phi0_sq_closed(mu, X + 1) / (S(1) - r);
  return true;
}

// majorant for |p(eta)| over eta in [0,1]
template <class S>
S coeff_abs_sum(const Poly<S>& coeffs) {
  S c(0);
  for (const auto& v : coeffs) c += abs_val(v);
  return c;
}

// lower bound m <= xi-check(x) for all x > X, from |xi(y)-xi(1)| <= L (1-y)
// with L = sum k |c_k|; false when the bound is not positive.
template <class S>
bool xi_floor(const Poly<S>& xi_coeffs, const S& q, int X, S& m) {
  S at1(0), L(0);
  for (size_t k = 0; k < xi_coeffs.size(); ++k) {
    at1 += xi_coeffs[k];
    L += S(static_cast<long>(k)) * abs_val(xi_coeffs[k]);
  }
  m = at1 - L * pow_int(q, X + 1);
  return m > 0;
}

// Smallest window (searched in steps of 4) whose certified weight-sum tail,
// including the polynomial majorant, is below tol.
template <class S>
int certified_window(const FamilySpec<S>& spec, const S& poly_majorant, const S& tol,
                     int start) {
  for (int X = start; X <= 4000; X += 4) {
    S tb;
    if (weight_tail_bound(spec, X, tb) && poly_majorant * tb < tol) return X;
  }
  throw std::runtime_error("certified tail bound does not reach tolerance");
}

}  // namespace xdop
