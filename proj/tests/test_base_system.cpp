#include "doctest.h"
#include "xdop/deformed_system.hpp"

using namespace xdop;
using R = Rational;
using Spec = FamilySpec<R>;

namespace {
Spec racah() {
  Spec s;
  s.family = Family::R;
  s.lam = {R(-8), R(10), R(2), R(3, 2)};
  s.grid_n = 8;
  return s;
}
Spec q_racah6() {
  Spec s;
  s.family = Family::qR;
  s.lam = {R(64), R(1, 256), R(1, 2), R(1, 3)};
  s.q = R(1, 2);
  s.grid_n = 6;
  return s;
}
Spec dual_hahn() {
  Spec s;
  s.family = Family::dH;
  s.lam = {R(1), R(2), R(8)};
  s.grid_n = 8;
  return s;
}
Spec lqj() {
  Spec s;
  s.family = Family::lqJ;
  s.lam = {R(1, 2), R(1, 2)};
  s.q = R(1, 2);
  return s;
}
}  // namespace

TEST_CASE("potentials at the boundary and reference values") {
  auto r = racah();
  CHECK(potential_B(r, 0) == 64);  // -abc/(1+d)
  CHECK(potential_D(r, 0) == 0);
  CHECK(potential_B(r, 8) == 0);

  Spec q2;
  q2.family = Family::qR;
  q2.lam = {R(4), R(1, 16), R(1, 2), R(1, 2)};
  q2.q = R(1, 2);
  q2.grid_n = 2;
  CHECK(potential_B(q2, 0) == R(15, 8));
  CHECK(potential_B(q2, 2) == 0);

  CHECK(potential_D(dual_hahn(), 0) == 0);
  CHECK(potential_D(lqj(), 0) == 0);
}

TEST_CASE("energies") {
  auto r = racah();
  CHECK(energy(r, 0) == 0);
  CHECK(energy(r, 1) == R(5, 2));  // dt = 3/2

  Spec q2;
  q2.family = Family::qR;
  q2.lam = {R(4), R(1, 16), R(1, 2), R(1, 2)};
  q2.q = R(1, 2);
  CHECK(energy(q2, 1) == R(3, 4));
  CHECK(energy(dual_hahn(), 3) == 3);
}

TEST_CASE("sinusoidal coordinate") {
  auto r = racah();
  CHECK(sinusoidal(r, 0) == 0);
  CHECK(sinusoidal(r, 2) == 7);  // 2(2+3/2)
  CHECK(sinusoidal(lqj(), 3) == R(7, 8));
}

TEST_CASE("auxiliary varphi") {
  auto r = racah();
  CHECK(aux_varphi(r, 0) == 1);
  CHECK(aux_varphi(r, 2) == R(13, 5));  // (2x+d+1)/(d+1)
  CHECK(aux_varphi(lqj(), 3) == R(1, 8));
  // phidef relation at every grid point
  for (const Spec& s : {racah(), q_racah6(), dual_hahn(), lqj()}) {
    int top = s.grid_n ? *s.grid_n : 10;
    for (int x = 0; x <= top; ++x)
      CHECK(aux_varphi(s, x) ==
            (sinusoidal(s, x + 1) - sinusoidal(s, x)) / sinusoidal(s, 1));
  }
}

TEST_CASE("polynomial values against the P_n(eta(1)) oracle") {
  for (const Spec& s : {racah(), q_racah6(), dual_hahn(), lqj()}) {
    int nmax = s.grid_n ? *s.grid_n : 6;
    for (int n = 0; n <= nmax; ++n) {
      CHECK(poly_value(s, n, 0) == 1);
      CHECK(poly_value(s, n, 1) == 1 - energy(s, n) / potential_B(s, 0));
    }
  }
}

TEST_CASE("interpolated coefficients of P_1 for Racah") {
  auto p = polynomial_P(racah(), 1);
  REQUIRE(p.coeffs.size() == 2);
  CHECK(p.coeffs[0] == 1);
  CHECK(p.coeffs[1] == R(-1, 64));
  CHECK(poly_eval(p.coeffs, sinusoidal(racah(), 1)) == R(123, 128));
}

TEST_CASE("weight: telescoping product equals the closed form") {
  for (const Spec& s : {racah(), q_racah6(), dual_hahn(), lqj()}) {
    int top = s.grid_n ? *s.grid_n : 12;
    for (int x = 0; x <= top; ++x)
      CHECK(weight_phi0_sq_product(s, x) == weight_phi0_sq_closed(s, x));
  }
  CHECK(weight_phi0_sq_closed(lqj(), 1) == R(3, 8));
}

TEST_CASE("norms: orthogonality sum is the oracle for d_n^2") {
  // sum phi0^2 = 1/d_0^2 on the full finite grid
  for (const Spec& s : {racah(), q_racah6(), dual_hahn()}) {
    R total(0);
    for (int x = 0; x <= *s.grid_n; ++x) total += weight_phi0_sq_product(s, x);
    CHECK(total == R(1) / norm_dn_sq(s, 0));
  }
  // dH n=0: d_0^2 = (b)_N/(a+b)_N
  auto dh = dual_hahn();
  CHECK(norm_dn_sq(dh, 0) ==
        shifted_factorial(R(2), 8) / shifted_factorial(R(3), 8));
}

TEST_CASE("lqJ norm splits into a rational part and an infinite product") {
  auto split = norm_dn_sq_split(lqj(), 0);
  CHECK(split.has_infinite);
  CHECK(split.z_num == R(1, 4));   // aq
  CHECK(split.z_den == R(1, 16));  // abq^2
  // float value equals the truncated weight sum to well below the tail size
  set_float_precision(256);
  MpFloat total(0);
  for (int x = 0; x <= 160; ++x) total += to_float(weight_phi0_sq_product(lqj(), x));
  MpFloat target = 1 / norm_value(split, lqj().q);
  CHECK(abs(total - target) < pow(MpFloat(2), -150));
}

TEST_CASE("difference equation holds on the grid") {
  for (const Spec& s : {racah(), dual_hahn(), lqj()}) {
    int top = s.grid_n ? *s.grid_n : 9;
    int nmax = s.grid_n ? *s.grid_n : 4;
    for (int n = 0; n <= nmax; ++n)
      for (int x = 0; x <= top; ++x) {
        R left = potential_B(s, x) * (poly_value(s, n, x) - poly_value(s, n, x + 1));
        if (x > 0)
          left += potential_D(s, x) * (poly_value(s, n, x) - poly_value(s, n, x - 1));
        CHECK(left == energy(s, n) * poly_value(s, n, x));
      }
  }
}

TEST_CASE("half-step combination reconstructs the potentials") {
  for (const Spec& s : {racah(), q_racah6(), dual_hahn(), lqj()}) {
    auto st = shift_delta_tilde(s);
    R kap = s.kappa();
    int top = s.grid_n ? *s.grid_n : 8;
    for (int x = 0; x <= top; ++x) {
      auto v = v_factors(s, x);
      CHECK(potential_B(s, x) * aux_varphi(st, x) * sqrt_kappa_varphi_half(st, x, true) ==
            -kap * v.v1B * v.v2B);
      CHECK(potential_D(s, x) * aux_varphi(st, x) * sqrt_kappa_varphi_half(st, x, false) ==
            -kap * v.v1D * v.v2D);
    }
  }
}
