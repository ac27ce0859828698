#pragma once

// The original (undeformed) systems: potentials, energies, sinusoidal
// coordinate, the auxiliary function, eigenpolynomials, ground-state weight
// and norms. Everything is a free function of (spec, index) returning the
// closed form exactly; grid tables cache them.

#include <vector>

#include "xdop/family.hpp"
#include "xdop/hyper.hpp"
#include "xdop/polynomial.hpp"

namespace xdop {

struct DenominatorZero : std::runtime_error {
  DenominatorZero(const std::string& what) : std::runtime_error(what) {}
};

template <class S>
S checked_div(const S& num, const S& den, const char* where) {
  if (den == 0) throw DenominatorZero(where);
  return num / den;
}

// d~ : the dual parameter entering energies and norms.
template <class S>
S dtilde(const FamilySpec<S>& spec) {
  const auto& l = spec.lam;
  switch (spec.family) {
    case Family::R: return l[0] + l[1] + l[2] - l[3] - S(1);
    case Family::qR: return l[0] * l[1] * l[2] / (l[3] * spec.q);
    default: throw std::logic_error("dtilde defined for R/qR only");
  }
}

template <class S>
S potential_B(const FamilySpec<S>& spec, int x) {
  const auto& l = spec.lam;
  switch (spec.family) {
    case Family::R: {
      S num = -(S(x) + l[0]) * (S(x) + l[1]) * (S(x) + l[2]) * (S(x) + l[3]);
      S den = (S(2 * x) + l[3]) * (S(2 * x + 1) + l[3]);
      return checked_div(num, den, "B denominator (2x+d)(2x+1+d)");
    }
    case Family::qR: {
      S qx = pow_int(spec.q, x);
      S num = -(S(1) - l[0] * qx) * (S(1) - l[1] * qx) * (S(1) - l[2] * qx) *
              (S(1) - l[3] * qx);
      S den = (S(1) - l[3] * qx * qx) * (S(1) - l[3] * qx * qx * spec.q);
      return checked_div(num, den, "B denominator (1-dq^2x)(1-dq^2x+1)");
    }
    case Family::dH: {
      S num = (S(x) + l[0]) * (S(x) + l[0] + l[1] - S(1)) * (l[2] - S(x));
      S den = (S(2 * x - 1) + l[0] + l[1]) * (S(2 * x) + l[0] + l[1]);
      return checked_div(num, den, "B denominator (2x-1+a+b)(2x+a+b)");
    }
    case Family::dqH: {
      S qx = pow_int(spec.q, x);
      S ab = l[0] * l[1];
      S num = (qx / l[2] - S(1)) * (S(1) - l[0] * qx) * (S(1) - ab * qx / spec.q);
      S den = (S(1) - ab * qx * qx / spec.q) * (S(1) - ab * qx * qx);
      return checked_div(num, den, "B denominator (1-abq^2x-1)(1-abq^2x)");
    }
    case Family::lqJ:
      return l[0] * (pow_int(spec.q, -x) - l[1] * spec.q);
  }
  throw std::logic_error("unreachable");
}

template <class S>
S potential_D(const FamilySpec<S>& spec, int x) {
  const auto& l = spec.lam;
  switch (spec.family) {
    case Family::R: {
      S num = -(S(x) + l[3] - l[0]) * (S(x) + l[3] - l[1]) * (S(x) + l[3] - l[2]) * S(x);
      S den = (S(2 * x - 1) + l[3]) * (S(2 * x) + l[3]);
      return checked_div(num, den, "D denominator (2x-1+d)(2x+d)");
    }
    case Family::qR: {
      S qx = pow_int(spec.q, x);
      S num = -dtilde(spec) * (S(1) - l[3] * qx / l[0]) * (S(1) - l[3] * qx / l[1]) *
              (S(1) - l[3] * qx / l[2]) * (S(1) - qx);
      S den = (S(1) - l[3] * qx * qx / spec.q) * (S(1) - l[3] * qx * qx);
      return checked_div(num, den, "D denominator (1-dq^2x-1)(1-dq^2x)");
    }
    case Family::dH: {
      S num = S(x) * (S(x) + l[1] - S(1)) * (S(x) + l[0] + l[1] + l[2] - S(1));
      S den = (S(2 * x - 2) + l[0] + l[1]) * (S(2 * x - 1) + l[0] + l[1]);
      return checked_div(num, den, "D denominator (2x-2+a+b)(2x-1+a+b)");
    }
    case Family::dqH: {
      S qx = pow_int(spec.q, x);
      S ab = l[0] * l[1];
      S num = l[0] * qx / (l[2] * spec.q) * (S(1) - qx) * (S(1) - ab * l[2] * qx / spec.q) *
              (S(1) - l[1] * qx / spec.q);
      S den = (S(1) - ab * qx * qx / (spec.q * spec.q)) * (S(1) - ab * qx * qx / spec.q);
      return checked_div(num, den, "D denominator (1-abq^2x-2)(1-abq^2x-1)");
    }
    case Family::lqJ:
      return pow_int(spec.q, -x) - S(1);
  }
  throw std::logic_error("unreachable");
}

template <class S>
S energy(const FamilySpec<S>& spec, int n) {
  switch (spec.family) {
    case Family::R: return S(n) * (S(n) + dtilde(spec));
    case Family::qR:
      return (pow_int(spec.q, -n) - S(1)) * (S(1) - dtilde(spec) * pow_int(spec.q, n));
    case Family::dH: return S(n);
    case Family::dqH: return pow_int(spec.q, -n) - S(1);
    case Family::lqJ:
      return (pow_int(spec.q, -n) - S(1)) *
             (S(1) - spec.lam[0] * spec.lam[1] * pow_int(spec.q, n + 1));
  }
  throw std::logic_error("unreachable");
}

template <class S>
S sinusoidal(const FamilySpec<S>& spec, int x) {
  const auto& l = spec.lam;
  switch (spec.family) {
    case Family::R: return S(x) * (S(x) + l[3]);
    case Family::qR:
      return (pow_int(spec.q, -x) - S(1)) * (S(1) - l[3] * pow_int(spec.q, x));
    case Family::dH: return S(x) * (S(x) + l[0] + l[1] - S(1));
    case Family::dqH:
      return (pow_int(spec.q, -x) - S(1)) *
             (S(1) - l[0] * l[1] * pow_int(spec.q, x) / spec.q);
    case Family::lqJ: return S(1) - pow_int(spec.q, x);
  }
  throw std::logic_error("unreachable");
}

template <class S>
S aux_varphi(const FamilySpec<S>& spec, int x) {
  const auto& l = spec.lam;
  switch (spec.family) {
    case Family::R:
      return checked_div(S(2 * x + 1) + l[3], S(1) + l[3], "varphi denominator d+1");
    case Family::qR:
      return checked_div(pow_int(spec.q, -x) - l[3] * pow_int(spec.q, x + 1),
                         S(1) - l[3] * spec.q, "varphi denominator 1-dq");
    case Family::dH:
      return checked_div(S(2 * x) + l[0] + l[1], l[0] + l[1], "varphi denominator a+b");
    case Family::dqH:
      return checked_div(pow_int(spec.q, -x) - l[0] * l[1] * pow_int(spec.q, x),
                         S(1) - l[0] * l[1], "varphi denominator 1-ab");
    case Family::lqJ:
      return pow_int(spec.q, x);
  }
  throw std::logic_error("unreachable");
}

// sqrt(kappa) * varphi(x + 1/2; lambda) and sqrt(kappa) * varphi(x - 1/2;
// lambda). The half-integer q-powers cancel against sqrt(kappa) = q^{-1/2},
// so both combinations are rational per family; they are the only place
// half-steps occur (the B/D factorizations).
template <class S>
S sqrt_kappa_varphi_half(const FamilySpec<S>& spec, int x, bool plus) {
  const int h = plus ? x : x - 1;  // evaluates at h + 1/2
  const auto& l = spec.lam;
  switch (spec.family) {
    case Family::R: return (S(2 * h + 2) + l[3]) / (S(1) + l[3]);
    case Family::qR:
      return (pow_int(spec.q, -h - 1) - l[3] * pow_int(spec.q, h + 1)) /
             (S(1) - l[3] * spec.q);
    case Family::dH: return (S(2 * h + 1) + l[0] + l[1]) / (l[0] + l[1]);
    case Family::dqH:
      return (pow_int(spec.q, -h - 1) - l[0] * l[1] * pow_int(spec.q, h)) /
             (S(1) - l[0] * l[1]);
    case Family::lqJ: return pow_int(spec.q, h);
  }
  throw std::logic_error("unreachable");
}

// P-check_n(x; lambda): the eigenpolynomial evaluated on the grid through its
// terminating hypergeometric representation.
template <class S>
S poly_value(const FamilySpec<S>& spec, int n, int x) {
  const auto& l = spec.lam;
  const S& q = spec.q;
  switch (spec.family) {
    case Family::R: {
      const S num[] = {S(-n), S(n) + dtilde(spec), S(-x), S(x) + l[3]};
      const S den[] = {l[0], l[1], l[2]};
      return hyper_f<S>(num, den, S(1), n);
    }
    case Family::qR: {
      const S num[] = {pow_int(q, -n), dtilde(spec) * pow_int(q, n), pow_int(q, -x),
                       l[3] * pow_int(q, x)};
      const S den[] = {l[0], l[1], l[2]};
      return hyper_phi<S>(num, den, q, q, n);
    }
    case Family::dH: {
      const S num[] = {S(-n), S(x) + l[0] + l[1] - S(1), S(-x)};
      const S den[] = {l[0], -l[2]};
      return hyper_f<S>(num, den, S(1), n);
    }
    case Family::dqH: {
      const S num[] = {pow_int(q, -n), l[0] * l[1] * pow_int(q, x) / q, pow_int(q, -x)};
      const S den[] = {l[0], S(1) / l[2]};
      return hyper_phi<S>(num, den, q, q, n);
    }
    case Family::lqJ: {
      const S num[] = {pow_int(q, -n), l[0] * l[1] * pow_int(q, n + 1), pow_int(q, -x)};
      const S den[] = {l[1] * q};
      return hyper_phi<S>(num, den, q, pow_int(q, x) / l[0], n);
    }
  }
  throw std::logic_error("unreachable");
}

// Orthogonality weight phi_0(x)^2, closed form.
template <class S>
S weight_phi0_sq_closed(const FamilySpec<S>& spec, int x) {
  const auto& l = spec.lam;
  const S& q = spec.q;
  switch (spec.family) {
    case Family::R: {
      S num = shifted_factorial(l[0], x) * shifted_factorial(l[1], x) *
              shifted_factorial(l[2], x) * shifted_factorial(l[3], x);
      S den = shifted_factorial(S(1) + l[3] - l[0], x) *
              shifted_factorial(S(1) + l[3] - l[1], x) *
              shifted_factorial(S(1) + l[3] - l[2], x) * shifted_factorial(S(1), x);
      return num / den * (S(2 * x) + l[3]) / l[3];
    }
    case Family::qR: {
      S num = q_pochhammer(l[0], q, x) * q_pochhammer(l[1], q, x) *
              q_pochhammer(l[2], q, x) * q_pochhammer(l[3], q, x);
      S den = q_pochhammer(l[3] * q / l[0], q, x) * q_pochhammer(l[3] * q / l[1], q, x) *
              q_pochhammer(l[3] * q / l[2], q, x) * q_pochhammer(q, q, x) *
              pow_int(dtilde(spec), x);
      return num / den * (S(1) - l[3] * pow_int(q, 2 * x)) / (S(1) - l[3]);
    }
    case Family::dH: {
      const int N = spec.n_value();
      S binom = shifted_factorial(S(1), N) /
                (shifted_factorial(S(1), x) * shifted_factorial(S(1), N - x));
      S num = shifted_factorial(l[0], x) * (S(2 * x) + l[0] + l[1] - S(1)) *
              shifted_factorial(l[0] + l[1], N);
      S den = shifted_factorial(l[1], x) * shifted_factorial(S(x) + l[0] + l[1] - S(1), N + 1);
      return binom * num / den;
    }
    case Family::dqH: {
      const int N = spec.n_value();
      S ab = l[0] * l[1];
      S binom = q_pochhammer(q, q, N) / (q_pochhammer(q, q, x) * q_pochhammer(q, q, N - x));
      S num = q_pochhammer(l[0], q, x) * q_pochhammer(ab / q, q, x);
      S den = q_pochhammer(ab * l[2], q, x) * q_pochhammer(l[1], q, x) * pow_int(l[0], x);
      return binom * num / den * (S(1) - ab * pow_int(q, 2 * x - 1)) / (S(1) - ab / q);
    }
    case Family::lqJ:
      return q_pochhammer(l[1] * q, q, x) / q_pochhammer(q, q, x) *
             pow_int(l[0] * q, x);
  }
  throw std::logic_error("unreachable");
}

// phi_0(x)^2 through the zero-mode telescoping product prod B(y)/D(y+1); must
// agree exactly with the closed form.
template <class S>
S weight_phi0_sq_product(const FamilySpec<S>& spec, int x) {
  S p(1);
  for (int y = 0; y < x; ++y)
    p *= potential_B(spec, y) / potential_D(spec, y + 1);
  return p;
}

// Normalization constants d_n^2. For lqJ the value splits into an exact
// rational prefactor times (z_num;q)_inf/(z_den;q)_inf; the split is exposed
// so exact-backend identities can cancel the infinite parts.
template <class S>
struct NormSplit {
  S rational_part;
  bool has_infinite = false;
  S z_num = S(0), z_den = S(0);  // (z_num;q)_inf / (z_den;q)_inf
};

template <class S>
NormSplit<S> norm_dn_sq_split(const FamilySpec<S>& spec, int n) {
  const auto& l = spec.lam;
  const S& q = spec.q;
  NormSplit<S> out;
  switch (spec.family) {
    case Family::R: {
      const int N = spec.n_value();
      S dt = dtilde(spec);
      S first = shifted_factorial(l[0], n) * shifted_factorial(l[1], n) *
                shifted_factorial(l[2], n) * shifted_factorial(dt, n) /
                (shifted_factorial(S(1) + dt - l[0], n) *
                 shifted_factorial(S(1) + dt - l[1], n) *
                 shifted_factorial(S(1) + dt - l[2], n) * shifted_factorial(S(1), n)) *
                (S(2 * n) + dt) / dt;
      S second = shifted_factorial(S(1) + l[3] - l[0], N) *
                 shifted_factorial(S(1) + l[3] - l[1], N) *
                 shifted_factorial(S(1) + l[3] - l[2], N) /
                 (shifted_factorial(dt + S(1), N) * shifted_factorial(l[3] + S(1), 2 * N));
      if (N % 2) second = -second;
      out.rational_part = first * second;
      return out;
    }
    case Family::qR: {
      const int N = spec.n_value();
      S dt = dtilde(spec);
      S first = q_pochhammer(l[0], q, n) * q_pochhammer(l[1], q, n) *
                q_pochhammer(l[2], q, n) * q_pochhammer(dt, q, n) /
                (q_pochhammer(dt * q / l[0], q, n) * q_pochhammer(dt * q / l[1], q, n) *
                 q_pochhammer(dt * q / l[2], q, n) * q_pochhammer(q, q, n) *
                 pow_int(l[3], n)) *
                (S(1) - dt * pow_int(q, 2 * n)) / (S(1) - dt);
      S second = q_pochhammer(l[3] * q / l[0], q, N) * q_pochhammer(l[3] * q / l[1], q, N) *
                 q_pochhammer(l[3] * q / l[2], q, N) * pow_int(dt, N) *
                 pow_int(q, static_cast<long>(N) * (N + 1) / 2) /
                 (q_pochhammer(dt * q, q, N) * q_pochhammer(l[3] * q, q, 2 * N));
      if (N % 2) second = -second;
      out.rational_part = first * second;
      return out;
    }
    case Family::dH: {
      const int N = spec.n_value();
      S binom = shifted_factorial(S(1), N) /
                (shifted_factorial(S(1), n) * shifted_factorial(S(1), N - n));
      out.rational_part = binom * shifted_factorial(l[0], n) *
                          shifted_factorial(l[1], N - n) / shifted_factorial(l[0] + l[1], N);
      return out;
    }
    case Family::dqH: {
      const int N = spec.n_value();
      S binom = q_pochhammer(q, q, N) / (q_pochhammer(q, q, n) * q_pochhammer(q, q, N - n));
      out.rational_part = binom * q_pochhammer(l[0], q, n) * q_pochhammer(l[1], q, N - n) /
                          q_pochhammer(l[0] * l[1], q, N) * pow_int(l[0], N - n);
      return out;
    }
    case Family::lqJ: {
      S ab = l[0] * l[1];
      out.rational_part = q_pochhammer(l[1] * q, q, n) * q_pochhammer(ab * q, q, n) *
                          pow_int(l[0], n) * pow_int(q, static_cast<long>(n) * n) /
                          (q_pochhammer(q, q, n) * q_pochhammer(l[0] * q, q, n)) *
                          (S(1) - ab * pow_int(q, 2 * n + 1)) / (S(1) - ab * q);
      out.has_infinite = true;
      out.z_num = l[0] * q;
      out.z_den = ab * q * q;
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

// Finite families only: the plain d_n^2 value.
template <class S>
S norm_dn_sq(const FamilySpec<S>& spec, int n) {
  auto split = norm_dn_sq_split(spec, n);
  if (split.has_infinite)
    throw std::logic_error("norm_dn_sq on lqJ needs the float backend; use the split");
  return split.rational_part;
}

// (z;q)_inf with certified truncation: stops once the remaining log-tail is
// below 2^-(prec+8). Requires |z| < 1 eventually, which q^k ensures.
inline MpFloat q_pochhammer_infinite(const MpFloat& z, const MpFloat& q) {
  MpFloat p(1), zq = z;
  MpFloat cut = pow(MpFloat(2), -(float_precision_bits + 8));
  for (int k = 0; k < 100000; ++k) {
    if (abs(zq) / (1 - abs(zq)) < cut) break;
    p *= 1 - zq;
    zq *= q;
  }
  return p;
}

inline MpFloat norm_value(const NormSplit<Rational>& split, const Rational& q) {
  MpFloat v = to_float(split.rational_part);
  if (split.has_infinite)
    v *= q_pochhammer_infinite(to_float(split.z_num), to_float(q)) /
         q_pochhammer_infinite(to_float(split.z_den), to_float(q));
  return v;
}

// A degree-n polynomial in eta(x; lambda + basis_shift * delta), constant
// term first.
template <class S>
struct EtaPolynomial {
  Poly<S> coeffs;
  int basis_shift = 0;
};

// Exact coefficients of P_n in the eta(x; lambda) basis, by interpolation at
// x = 0..n (eta is strictly monotone, so the nodes are distinct).
template <class S>
EtaPolynomial<S> polynomial_P(const FamilySpec<S>& spec, int n) {
  std::vector<S> nodes, values;
  nodes.reserve(n + 1);
  values.reserve(n + 1);
  for (int x = 0; x <= n; ++x) {
    nodes.push_back(sinusoidal(spec, x));
    values.push_back(poly_value(spec, n, x));
  }
  EtaPolynomial<S> p;
  p.coeffs = interpolate(nodes, values);
  p.basis_shift = 0;
  return p;
}

// Cached per-parameter-set tables of the original system.
template <class S>
struct SystemTables {
  FamilySpec<S> spec;
  int x_max = 0;  // grid 0..x_max (certified window for lqJ)
  int n_max = 0;
  std::vector<S> B, D, eta, varphi, phi0_sq;
  std::vector<S> energies;
  std::vector<std::vector<S>> P;  // P[n][x], x = 0..x_max+1 (the +1 row feeds shifts)

  const S& poly(int n, int x) const { return P[n][x]; }
};

template <class S>
SystemTables<S> build_system_tables(const FamilySpec<S>& spec, int x_max, int n_max) {
  SystemTables<S> t;
  t.spec = spec;
  t.x_max = x_max;
  t.n_max = n_max;
  for (int x = 0; x <= x_max; ++x) {
    t.B.push_back(potential_B(spec, x));
    t.D.push_back(potential_D(spec, x));
    t.varphi.push_back(aux_varphi(spec, x));
    t.phi0_sq.push_back(weight_phi0_sq_product(spec, x));
  }
  for (int x = 0; x <= x_max + 1; ++x) t.eta.push_back(sinusoidal(spec, x));
  for (int n = 0; n <= n_max; ++n) {
    t.energies.push_back(energy(spec, n));
    std::vector<S> row;
    for (int x = 0; x <= x_max + 1; ++x) row.push_back(poly_value(spec, n, x));
    t.P.push_back(std::move(row));
  }
  return t;
}

}  // namespace xdop
