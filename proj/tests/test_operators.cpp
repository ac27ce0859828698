#include "doctest.h"
#include "xdop/operators.hpp"

using namespace xdop;
using R = Rational;
using Spec = FamilySpec<R>;
using Mat = DenseMatrix<R>;
using Vec = DenseVector<R>;

namespace {
Spec racah() {
  Spec s;
  s.family = Family::R;
  s.lam = {R(-8), R(10), R(2), R(3, 2)};
  s.grid_n = 8;
  return s;
}
}  // namespace

TEST_CASE("tilde-H row structure at the boundary") {
  auto r = racah();
  Mat h = op_h_tilde(r, 9);
  CHECK(h(0, 0) == 64);   // B(0), D(0)=0
  CHECK(h(0, 1) == -64);
  for (int j = 2; j < 9; ++j) CHECK(h(0, j) == 0);
  CHECK(h(8, 8) == potential_D(r, 8));  // B(8)=0 kills the superdiagonal
}

TEST_CASE("tilde-H = B F as matrices") {
  auto r = racah();
  Mat h = op_h_tilde(r, 9);
  Mat f = op_forward(r, 8, 9);
  Mat b = op_backward(r, 9, 8);
  CHECK(Mat(b * f) == h);
}

TEST_CASE("forward operator lowers P_1 to E_1 times the shifted P_0") {
  auto r = racah();
  Mat f = op_forward(r, 8, 9);
  Vec p1(9);
  for (int x = 0; x < 9; ++x) p1(x) = poly_value(r, 1, x);
  Vec image = f * p1;
  for (int x = 0; x < 8; ++x) CHECK(image(x) == R(5, 2));  // E_1 * 1
}

TEST_CASE("eigenvalue equation as a matrix identity") {
  auto r = racah();
  Mat h = op_h_tilde(r, 9);
  for (int n = 0; n <= 8; ++n) {
    Vec v(9);
    for (int x = 0; x < 9; ++x) v(x) = poly_value(r, n, x);
    CHECK(Vec(h * v) == Vec(energy(r, n) * v));
  }
}

TEST_CASE("deformed tilde-H equals B_ell F_ell and annihilates the ground row") {
  auto r = racah();
  for (int ell : {1, 2}) {
    int m = 8 - ell + 1;
    auto t = build_deformed_tables(r, ell, 8 - ell, 0);
    Mat h = op_h_tilde_deformed(t, m);
    Mat f = op_forward_deformed(t, m - 1, m);
    Mat b = op_backward_deformed(t, m, m - 1);
    CHECK(Mat(b * f) == h);
    // P_{ell,0} is the zero-energy eigenvector
    Vec v(m);
    for (int x = 0; x < m; ++x) v(x) = exceptional_value(r, ell, 0, x);
    Vec hv = h * v;
    for (int x = 0; x < m; ++x) CHECK(hv(x) == 0);
  }
}

TEST_CASE("hat operators: products give both factorized Hamiltonians") {
  auto r = racah();
  for (int ell : {1, 3}) {
    int m = 8 - ell + 1;
    auto t = build_deformed_tables(r, ell, 8 - ell, 0);
    auto slt = shift_delta_tilde(shift_delta(r, ell));
    Mat fh = op_fhat(t, m);
    Mat bh = op_bhat(t, m);
    R c = fhat(r, ell, 0) * bhat(r, ell, 0);
    Mat plus = bh * fh;
    Mat minus = fh * bh;
    Mat h_orig = op_h_tilde(slt, m);
    Mat h_def = op_h_tilde_deformed(t, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        CHECK(plus(i, j) == h_orig(i, j) + (i == j ? c : R(0)));
        CHECK(minus(i, j) == h_def(i, j) + (i == j ? c : R(0)));
      }
  }
}

TEST_CASE("hat forward action sends 1 to fhat xi(.; lambda+delta)") {
  auto r = racah();
  auto sp = shift_delta(r);
  int ell = 1, m = 8;
  auto t = build_deformed_tables(r, ell, 7, 0);
  Mat fh = op_fhat(t, m);
  Vec ones = Vec::Constant(m, R(1));
  Vec image = fh * ones;
  for (int x = 0; x < m; ++x)
    CHECK(image(x) == fhat(r, ell, 0) * xi_value(sp, ell, x));
}

TEST_CASE("symmetric gauge float sanity") {
  set_float_precision(256);
  auto r = racah();
  FamilySpec<MpFloat> fr;
  fr.family = r.family;
  for (const auto& v : r.lam) fr.lam.push_back(to_float(v));
  fr.q = 1;
  fr.grid_n = 8;
  auto h = op_h_symmetric(fr, 9);
  auto a = op_a(fr, 9);
  DenseMatrix<MpFloat> prod = a.transpose() * a;
  MpFloat tol = pow(MpFloat(2), -(float_precision_bits - 16));
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) CHECK(abs(prod(i, j) - h(i, j)) <= tol);
  for (int n = 0; n <= 8; ++n)
    CHECK(char_poly_residual(h, to_float(energy(r, n))) <= tol);
  // a value strictly between eigenvalues is not in the spectrum
  CHECK(char_poly_residual(h, to_float(energy(r, 0) + R(1, 7))) > tol);
}
