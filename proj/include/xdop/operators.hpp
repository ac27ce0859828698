#pragma once

// Dense matrix realizations of the shift/difference operators in the
// polynomial gauge (exact on the rational backend) and the symmetric gauge
// (sqrt-laden, float backend only). Shift terms truncate at the boundary rows
// through vanishing coefficients; rectangular operators take their row/column
// counts from the grids of the systems they map between.

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>

#include "xdop/deformed_system.hpp"

namespace xdop {

template <class S>
using DenseMatrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using DenseVector = Eigen::Matrix<S, Eigen::Dynamic, 1>;

// tilde-H(lambda) = B(x)(1 - e^d) + D(x)(1 - e^-d) on 0..rows-1.
template <class S>
DenseMatrix<S> op_h_tilde(const FamilySpec<S>& spec, int rows) {
  DenseMatrix<S> m = DenseMatrix<S>::Zero(rows, rows);
  for (int x = 0; x < rows; ++x) {
    S b = potential_B(spec, x), d = potential_D(spec, x);
    m(x, x) = b + d;
    if (x + 1 < rows) m(x, x + 1) = -b;
    if (x > 0) m(x, x - 1) = -d;
  }
  return m;
}

// F(lambda): grid(lambda) -> grid(lambda+delta); row x is
// B(0)/varphi(x) (f(x) - f(x+1)).
template <class S>
DenseMatrix<S> op_forward(const FamilySpec<S>& spec, int rows, int cols) {
  DenseMatrix<S> m = DenseMatrix<S>::Zero(rows, cols);
  S b0 = potential_B(spec, 0);
  for (int x = 0; x < rows; ++x) {
    S c = b0 / aux_varphi(spec, x);
    m(x, x) = c;
    if (x + 1 < cols) m(x, x + 1) = -c;
  }
  return m;
}

// B(lambda): grid(lambda+delta) -> grid(lambda); row x is
// (B(x) varphi(x) f(x) - D(x) varphi(x-1) f(x-1)) / B(0).
template <class S>
DenseMatrix<S> op_backward(const FamilySpec<S>& spec, int rows, int cols) {
  DenseMatrix<S> m = DenseMatrix<S>::Zero(rows, cols);
  S b0 = potential_B(spec, 0);
  for (int x = 0; x < rows; ++x) {
    if (x < cols) m(x, x) = potential_B(spec, x) * aux_varphi(spec, x) / b0;
    if (x > 0 && x - 1 < cols)
      m(x, x - 1) = -potential_D(spec, x) * aux_varphi(spec, x - 1) / b0;
  }
  return m;
}

// tilde-H_ell(lambda) from its explicit display: diagonal B_ell + D_ell,
// super-diagonal -B(x; lambda+ell delta) xi(x)/xi(x+1), sub-diagonal
// -D(x; lambda+ell delta) xi(x+1)/xi(x).
template <class S>
DenseMatrix<S> op_h_tilde_deformed(const DeformedTables<S>& t, int rows) {
  DenseMatrix<S> m = DenseMatrix<S>::Zero(rows, rows);
  auto sl = shift_delta(t.spec, t.ell);
  for (int x = 0; x < rows; ++x) {
    m(x, x) = t.B_ell[x] + t.D_ell[x];
    if (x + 1 < rows) m(x, x + 1) = -potential_B(sl, x) * t.xi0[x] / t.xi0[x + 1];
    if (x > 0) m(x, x - 1) = -potential_D(sl, x) * t.xi0[x + 1] / t.xi0[x];
  }
  return m;
}

// F_ell(lambda): grid^ell(lambda) -> grid^ell(lambda+delta).
template <class S>
DenseMatrix<S> op_forward_deformed(const DeformedTables<S>& t, int rows, int cols) {
  DenseMatrix<S> m = DenseMatrix<S>::Zero(rows, cols);
  auto sl = shift_delta(t.spec, t.ell);
  S b0 = potential_B(sl, 0);
  for (int x = 0; x < rows; ++x) {
    S pre = b0 / (aux_varphi(sl, x) * t.xi0[x + 1]);
    m(x, x) = pre * t.xi1[x + 1];
    if (x + 1 < cols) m(x, x + 1) = -pre * t.xi1[x];
  }
  return m;
}

// B_ell(lambda): grid^ell(lambda+delta) -> grid^ell(lambda).
template <class S>
DenseMatrix<S> op_backward_deformed(const DeformedTables<S>& t, int rows, int cols) {
  DenseMatrix<S> m = DenseMatrix<S>::Zero(rows, cols);
  auto sl = shift_delta(t.spec, t.ell);
  S b0 = potential_B(sl, 0);
  for (int x = 0; x < rows; ++x) {
    S pre = S(1) / (b0 * t.xi1[x]);
    if (x < cols)
      m(x, x) = pre * potential_B(sl, x) * t.xi0[x] * aux_varphi(sl, x);
    if (x > 0 && x - 1 < cols)
      m(x, x - 1) = -pre * potential_D(sl, x) * t.xi0[x + 1] * aux_varphi(sl, x - 1);
  }
  return m;
}

// Fhat_ell(lambda), square on grid^ell: row x is
// (v1B(x; lambda+ell delta) xi(x) f(x+1) - v1D(x; ...) xi(x+1) f(x)) / varphi(x; lambda+ell delta+delta~).
template <class S>
DenseMatrix<S> op_fhat(const DeformedTables<S>& t, int rows) {
  DenseMatrix<S> m = DenseMatrix<S>::Zero(rows, rows);
  auto sl = shift_delta(t.spec, t.ell);
  auto slt = shift_delta_tilde(sl);
  for (int x = 0; x < rows; ++x) {
    auto v = v_factors(sl, x);
    S pre = S(1) / aux_varphi(slt, x);
    m(x, x) = -pre * v.v1D * t.xi0[x + 1];
    if (x + 1 < rows) m(x, x + 1) = pre * v.v1B * t.xi0[x];
  }
  return m;
}

// Bhat_ell(lambda), square on grid^ell: row x is
// (v2B(x; lambda+(ell-1) delta) f(x) - v2D(x; ...) f(x-1)) / (xi(x) varphi(x; lambda+(ell-1) delta+delta~)).
template <class S>
DenseMatrix<S> op_bhat(const DeformedTables<S>& t, int rows) {
  DenseMatrix<S> m = DenseMatrix<S>::Zero(rows, rows);
  auto sm = shift_delta(t.spec, t.ell - 1);
  auto smt = shift_delta_tilde(sm);
  for (int x = 0; x < rows; ++x) {
    auto v = v_factors(sm, x);
    S pre = S(1) / (t.xi0[x] * aux_varphi(smt, x));
    m(x, x) = pre * v.v2B;
    if (x > 0) m(x, x - 1) = -pre * v.v2D;
  }
  return m;
}

// Symmetric gauge (float backend): H, A, A^dagger with sqrt(B), sqrt(D)
// entries.
inline DenseMatrix<MpFloat> op_h_symmetric(const FamilySpec<MpFloat>& spec, int rows) {
  DenseMatrix<MpFloat> m = DenseMatrix<MpFloat>::Zero(rows, rows);
  for (int x = 0; x < rows; ++x) {
    MpFloat b = potential_B(spec, x), d = potential_D(spec, x);
    m(x, x) = b + d;
    if (x + 1 < rows) m(x, x + 1) = -sqrt(b * potential_D(spec, x + 1));
    if (x > 0) m(x, x - 1) = -sqrt(potential_B(spec, x - 1) * d);
  }
  return m;
}

inline DenseMatrix<MpFloat> op_a(const FamilySpec<MpFloat>& spec, int rows) {
  DenseMatrix<MpFloat> m = DenseMatrix<MpFloat>::Zero(rows, rows);
  for (int x = 0; x < rows; ++x) {
    m(x, x) = sqrt(potential_B(spec, x));
    if (x + 1 < rows) m(x, x + 1) = -sqrt(potential_D(spec, x + 1));
  }
  return m;
}

// det(H - e I) for tridiagonal symmetric H via the three-term recurrence.
// The result is normalized by the largest term magnitude entering the
// recurrence, so it is scale-free and bounded below the working precision at
// a true eigenvalue regardless of intermediate growth.
inline MpFloat char_poly_residual(const DenseMatrix<MpFloat>& h, const MpFloat& e) {
  const int n = static_cast<int>(h.rows());
  MpFloat pm1(1), p0 = h(0, 0) - e;
  MpFloat mm1(1), m0 = abs(p0) > 1 ? abs(p0) : MpFloat(1);
  for (int k = 1; k < n; ++k) {
    MpFloat a = h(k, k) - e, b2 = h(k, k - 1) * h(k, k - 1);
    MpFloat p1 = a * p0 - b2 * pm1;
    MpFloat m1 = abs(a) * m0 + b2 * mm1;  // propagated magnitude
    pm1 = p0;
    p0 = p1;
    mm1 = m0;
    m0 = m1;
  }
  return abs(p0) / m0;
}

}  // namespace xdop
