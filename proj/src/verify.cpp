#include "xdop/verify.hpp"

#include <sstream>

#include "xdop/operators.hpp"

namespace xdop {

bool VerificationReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

int VerificationReport::failure_count() const {
  int n = 0;
  for (const auto& c : checks)
    if (!c.pass) ++n;
  return n;
}

std::string VerificationReport::text_summary() const {
  std::ostringstream os;
  os << "family " << family << "  lambda (";
  for (size_t i = 0; i < lambda.size(); ++i) os << (i ? "," : "") << lambda[i];
  os << ")";
  if (!q.empty()) os << "  q " << q;
  if (grid_n) os << "  N " << *grid_n;
  os << "\n";
  for (const auto& c : checks) {
    os << (c.pass ? "pass" : "FAIL") << "  " << c.name << "  [" << c.backend
       << "]  residual " << c.residual;
    if (!c.witness.empty()) os << "  (" << c.witness << ")";
    os << "\n";
  }
  os << checks.size() - failure_count() << "/" << checks.size() << " checks passed\n";
  return os.str();
}

namespace {

using R = Rational;
using Spec = FamilySpec<R>;
using Mat = DenseMatrix<R>;
using Vec = DenseVector<R>;
using FSpec = FamilySpec<MpFloat>;
using FMat = DenseMatrix<MpFloat>;
using FVec = DenseVector<MpFloat>;

std::string loc(int ell, int n, int m, int x) {
  std::ostringstream os;
  bool first = true;
  auto put = [&](const char* k, int v) {
    if (v < 0) return;
    if (!first) os << " ";
    os << k << "=" << v;
    first = false;
  };
  put("ell", ell);
  put("n", n);
  put("m", m);
  put("x", x);
  return os.str();
}

FSpec to_float_spec(const Spec& s) {
  FSpec f;
  f.family = s.family;
  for (const auto& v : s.lam) f.lam.push_back(to_float(v));
  f.q = to_float(s.q);
  f.grid_n = s.grid_n;
  return f;
}

struct Suite {
  const Spec& spec;
  const SuiteOptions& opt;
  VerificationReport rep;
  bool finite;
  int x_max;    // identity window (N for finite families)
  int n_max;    // polynomial range of the original system
  int sum_max;  // certified sum window (== x_max for finite families)

  SystemTables<R> base;

  Suite(const Spec& s, const SuiteOptions& o) : spec(s), opt(o) {
    finite = is_finite_family(spec.family);
    if (finite) {
      x_max = n_max = spec.n_value();
      sum_max = x_max;
    } else {
      x_max = opt.window;
      n_max = opt.n_cap >= 0 ? opt.n_cap : 5;
      sum_max = x_max;
    }
  }

  bool wanted(const std::string& name) const {
    if (opt.only.empty()) return true;
    for (const auto& t : opt.only)
      if (name.find(t) != std::string::npos) return true;
    return false;
  }

  void row(const std::string& name, const std::string& identity, bool pass,
           const std::string& residual, const std::string& witness,
           const char* backend = "exact") {
    rep.checks.push_back({name, identity, backend, pass, residual, witness});
  }

  template <class F>
  void exact_check(const std::string& name, const std::string& identity, F&& fn) {
    if (!wanted(name)) return;
    R residual(0);
    std::string witness;
    bool pass = fn(residual, witness);
    row(name, identity, pass, pass ? "0" : to_fraction_string(residual), witness);
  }

  // ---- constants, routed through the fault injection ----

  R c_fhat(int ell, int n) const {
    R v = fhat(spec, ell, n);
    if (opt.faults.is("fhat")) v *= opt.faults.scale;
    return v;
  }
  R c_bhat(int ell, int n) const {
    R v = bhat(spec, ell, n);
    if (opt.faults.is("bhat")) v *= opt.faults.scale;
    return v;
  }
  R c_kappa_hat(int ell) const {
    R v = kappa_hat(spec, ell);
    if (opt.faults.is("kappahat")) v *= opt.faults.scale;
    return v;
  }
  R c_s_ell(const Spec& sp, int ell) const {
    R v = s_ell(sp, ell);
    if (opt.faults.is("sl")) v *= opt.faults.scale;
    return v;
  }
  NormSplit<R> c_dn2(const Spec& sp, int n) const {
    auto v = norm_dn_sq_split(sp, n);
    if (opt.faults.is("dn2")) v.rational_part *= opt.faults.scale;
    return v;
  }
  NormSplit<R> c_dln2(int ell, int n) const {
    auto v = norm_dn_sq_split(shift_delta_tilde(shift_delta(spec, ell)), n);
    v.rational_part *= c_fhat(ell, n) / c_bhat(ell, n) / c_s_ell(spec, ell);
    if (opt.faults.is("dln2")) v.rational_part *= opt.faults.scale;
    return v;
  }
  NormSplit<R> c_dln2_second(int ell, int n) const {
    auto sl = shift_delta(spec, ell);
    auto v = norm_dn_sq_split(sl, n);
    R f0 = fhat(sl, 0, n), b0 = bhat(sl, 0, n);
    if (opt.faults.is("fhat")) f0 *= opt.faults.scale;
    if (opt.faults.is("bhat")) b0 *= opt.faults.scale;
    v.rational_part *= c_fhat(ell, n) / c_bhat(ell, n) * b0 / f0 * c_s_ell(sl, 0) /
                       c_s_ell(spec, ell);
    return v;
  }

  // Deformed grid tables with P_{ell,n} built through the (possibly faulted)
  // fhat of THIS suite's base parameter set; the shifted copy (lambda+delta)
  // uses the clean constants, matching how an injected corruption of a
  // lambda-level constant would propagate.
  struct DTab {
    int x_max = 0, n_max = 0;
    std::vector<R> xi0, xi1;               // 0..x_max+2
    std::vector<R> B_ell, D_ell, psi2v;    // 0..x_max
    std::vector<std::vector<R>> P;         // [n][0..x_max+1]
    std::vector<R> energies;
  };

  DTab make_dtab(const Spec& sp, int ell, int xm, int nm, bool faulted) const {
    DTab t;
    t.x_max = xm;
    t.n_max = nm;
    auto spd = shift_delta(sp);
    auto sl = shift_delta(sp, ell);
    auto slt = shift_delta_tilde(sl);
    for (int x = 0; x <= xm + 2; ++x) {
      t.xi0.push_back(xi_value(sp, ell, x));
      t.xi1.push_back(xi_value(spd, ell, x));
    }
    for (int x = 0; x <= xm; ++x) {
      t.B_ell.push_back(deformed_B(sp, ell, x));
      t.D_ell.push_back(deformed_D(sp, ell, x));
      t.psi2v.push_back(psi_sq(sp, ell, x));
    }
    for (int n = 0; n <= nm; ++n) {
      t.energies.push_back(energy(sl, n));
      R f = faulted ? c_fhat(ell, n) : fhat(sp, ell, n);
      std::vector<R> rowv;
      for (int x = 0; x <= xm + 1; ++x)
        rowv.push_back(exceptional_bracket(sp, ell, n, x) / (f * aux_varphi(slt, x)));
      t.P.push_back(std::move(rowv));
    }
    return t;
  }

  // ---- certified tails (infinite families) ----

  // sum_{x>X} phi0^2(x; mu) <= phi0^2(X+1; mu)/(1-r), r = a_mu q/(1-q^{X+2})
  bool weight_tail(const Spec& mu, int X, R& bound) const {
    R r = mu.lam[0] * mu.q / (R(1) - pow_int(mu.q, X + 2));
    if (!(r < 1)) return false;
    bound = weight_phi0_sq_closed(mu, X + 1) / (R(1) - r);
    return true;
  }

  // abs-sum of eta-basis coefficients: majorant for |P(eta)| on eta in [0,1]
  static R coeff_bound(const Poly<R>& coeffs) {
    R c(0);
    for (const auto& v : coeffs) c += abs_val(v);
    return c;
  }

  // lower bound for xi-check(x), x > X, via |xi(y)-xi(1)| <= L (1-y)
  static bool xi_lower_bound(const Poly<R>& xi_coeffs, const R& q, int X, R& m) {
    R at1(0), L(0);
    for (size_t k = 0; k < xi_coeffs.size(); ++k) {
      at1 += xi_coeffs[k];
      L += R(static_cast<long>(k)) * abs_val(xi_coeffs[k]);
    }
    m = at1 - L * pow_int(q, X + 1);
    return m > 0;
  }

  Poly<R> original_coeffs(int n) const {
    std::vector<R> nodes, values;
    for (int x = 0; x <= n; ++x) {
      nodes.push_back(sinusoidal(spec, x));
      values.push_back(poly_value(spec, n, x));
    }
    return interpolate(nodes, values);
  }

  Poly<R> deformed_coeffs(const DTab& t, int ell, int n) const {
    auto sl = shift_delta(spec, ell);
    std::vector<R> nodes, values;
    for (int x = 0; x <= ell + n; ++x) {
      nodes.push_back(sinusoidal(sl, x));
      values.push_back(t.P[n][x]);
    }
    return interpolate(nodes, values);
  }

  Poly<R> xi_coeffs(int ell) const {
    auto sm = shift_delta(spec, ell - 1);
    std::vector<R> nodes, values;
    for (int x = 0; x <= ell; ++x) {
      nodes.push_back(sinusoidal(sm, x));
      values.push_back(xi_value(spec, ell, x));
    }
    return interpolate(nodes, values);
  }

  // Grows sum_max until every certified tail in the run is below tail_tol.
  void grow_sum_window() {
    const R tol = opt.tail_tol;
    R cmax(1);
    for (int n = 0; n <= n_max; ++n) {
      R c = coeff_bound(original_coeffs(n));
      if (c > cmax) cmax = c;
    }
    struct PerEll {
      Poly<R> xc;
      Spec sl;
      R dmax;
    };
    std::vector<PerEll> per;
    for (int ell : opt.ells) {
      PerEll p{xi_coeffs(ell), shift_delta(spec, ell), R(1)};
      auto slt = shift_delta_tilde(p.sl);
      for (int n = 0; n <= n_max; ++n) {
        std::vector<R> nodes, values;
        for (int x = 0; x <= ell + n; ++x) {
          nodes.push_back(sinusoidal(p.sl, x));
          values.push_back(exceptional_bracket(spec, ell, n, x) /
                           (c_fhat(ell, n) * aux_varphi(slt, x)));
        }
        R c = coeff_bound(interpolate(nodes, values));
        if (c > p.dmax) p.dmax = c;
      }
      per.push_back(std::move(p));
    }
    for (int X = sum_max; X <= 4000; X += 4) {
      bool ok = true;
      R tb;
      if (!weight_tail(spec, X, tb) || !(cmax * cmax * tb < tol)) ok = false;
      for (const auto& p : per) {
        if (!ok) break;
        R m, tbl;
        if (!xi_lower_bound(p.xc, spec.q, X, m) || !weight_tail(p.sl, X, tbl) ||
            !(p.dmax * p.dmax / (m * m) * tbl < tol))
          ok = false;
      }
      if (ok) {
        sum_max = X;
        return;
      }
    }
    throw std::runtime_error("certified tail bound does not reach tolerance");
  }

  // ---- blocks ----

  void original_checks();
  void orthogonality_infinite();
  void deformed_checks(int ell);
  void deformed_orthogonality_infinite(int ell, const DTab& t);
  void intertwining_checks(int ell);
  void float_sanity_checks();
  void run();
};

void Suite::original_checks() {
  exact_check("original.boundary", "D(0)=0 and B(x_max)=0 (finite)",
              [&](R& res, std::string& w) {
                if (base.D[0] != 0) {
                  res = base.D[0];
                  w = loc(-1, -1, -1, 0);
                  return false;
                }
                if (finite && base.B[x_max] != 0) {
                  res = base.B[x_max];
                  w = loc(-1, -1, -1, x_max);
                  return false;
                }
                return true;
              });

  exact_check("original.positivity", "B(x)>0 on [0,x_max), D(x)>0 on (0,x_max]",
              [&](R& res, std::string& w) {
                int btop = finite ? x_max - 1 : x_max;
                for (int x = 0; x <= btop; ++x)
                  if (!(base.B[x] > 0)) {
                    res = base.B[x];
                    w = "B " + loc(-1, -1, -1, x);
                    return false;
                  }
                for (int x = 1; x <= x_max; ++x)
                  if (!(base.D[x] > 0)) {
                    res = base.D[x];
                    w = "D " + loc(-1, -1, -1, x);
                    return false;
                  }
                return true;
              });

  exact_check("original.eta", "eta(0)=0 and eta strictly increasing",
              [&](R& res, std::string& w) {
                if (base.eta[0] != 0) {
                  res = base.eta[0];
                  w = loc(-1, -1, -1, 0);
                  return false;
                }
                for (int x = 0; x <= x_max; ++x)
                  if (!(base.eta[x + 1] > base.eta[x])) {
                    res = base.eta[x + 1] - base.eta[x];
                    w = loc(-1, -1, -1, x);
                    return false;
                  }
                return true;
              });

  exact_check("original.energy_monotone", "0 = E_0 < E_1 < E_2 < ...",
              [&](R& res, std::string& w) {
                if (base.energies[0] != 0) {
                  res = base.energies[0];
                  w = loc(-1, 0, -1, -1);
                  return false;
                }
                for (int n = 0; n < n_max; ++n)
                  if (!(base.energies[n + 1] > base.energies[n])) {
                    res = base.energies[n + 1] - base.energies[n];
                    w = loc(-1, n + 1, -1, -1);
                    return false;
                  }
                return true;
              });

  exact_check("original.varphi", "varphi(x) = (eta(x+1)-eta(x))/eta(1), varphi(0)=1",
              [&](R& res, std::string& w) {
                for (int x = 0; x <= x_max; ++x) {
                  R rhs = (base.eta[x + 1] - base.eta[x]) / base.eta[1];
                  if (base.varphi[x] != rhs) {
                    res = base.varphi[x] - rhs;
                    w = loc(-1, -1, -1, x);
                    return false;
                  }
                }
                return base.varphi[0] == 1;
              });

  exact_check("original.weight", "phi0(x)^2 telescoping product equals the closed form",
              [&](R& res, std::string& w) {
                for (int x = 0; x <= x_max; ++x) {
                  R closed = weight_phi0_sq_closed(spec, x);
                  if (base.phi0_sq[x] != closed) {
                    res = base.phi0_sq[x] - closed;
                    w = loc(-1, -1, -1, x);
                    return false;
                  }
                }
                return base.phi0_sq[0] == 1;
              });

  exact_check("original.normalization", "P_n(0) = 1", [&](R& res, std::string& w) {
    for (int n = 0; n <= n_max; ++n)
      if (base.P[n][0] != 1) {
        res = base.P[n][0] - R(1);
        w = loc(-1, n, -1, -1);
        return false;
      }
    return true;
  });

  exact_check("original.pn_at_1", "P_n(eta(1)) = 1 - E_n/B(0)",
              [&](R& res, std::string& w) {
                for (int n = 0; n <= n_max; ++n) {
                  R rhs = R(1) - base.energies[n] / base.B[0];
                  if (base.P[n][1] != rhs) {
                    res = base.P[n][1] - rhs;
                    w = loc(-1, n, -1, -1);
                    return false;
                  }
                }
                return true;
              });

  exact_check("original.difference_equation",
              "B(x)(P_n(x)-P_n(x+1)) + D(x)(P_n(x)-P_n(x-1)) = E_n P_n(x)",
              [&](R& res, std::string& w) {
                for (int n = 0; n <= n_max; ++n)
                  for (int x = 0; x <= x_max; ++x) {
                    R left = base.B[x] * (base.P[n][x] - base.P[n][x + 1]);
                    if (x > 0) left += base.D[x] * (base.P[n][x] - base.P[n][x - 1]);
                    R r = left - base.energies[n] * base.P[n][x];
                    if (r != 0) {
                      res = r;
                      w = loc(-1, n, -1, x);
                      return false;
                    }
                  }
                return true;
              });

  auto spd = shift_delta(spec);

  exact_check("original.forward_shift", "F(lambda) P_n = E_n P_{n-1}(lambda+delta)",
              [&](R& res, std::string& w) {
                int top = finite ? x_max - 1 : x_max;
                for (int n = 1; n <= n_max; ++n)
                  for (int x = 0; x <= top; ++x) {
                    R left = base.B[0] / base.varphi[x] * (base.P[n][x] - base.P[n][x + 1]);
                    R r = left - base.energies[n] * poly_value(spd, n - 1, x);
                    if (r != 0) {
                      res = r;
                      w = loc(-1, n, -1, x);
                      return false;
                    }
                  }
                return true;
              });

  exact_check("original.backward_shift",
              "B(lambda) P_{n-1}(lambda+delta) = P_n (b_n = 1)",
              [&](R& res, std::string& w) {
                for (int n = 1; n <= n_max; ++n)
                  for (int x = 0; x <= x_max; ++x) {
                    R left = base.B[x] * base.varphi[x] * poly_value(spd, n - 1, x);
                    if (x > 0)
                      left -= base.D[x] * base.varphi[x - 1] * poly_value(spd, n - 1, x - 1);
                    left /= base.B[0];
                    R r = left - base.P[n][x];
                    if (r != 0) {
                      res = r;
                      w = loc(-1, n, -1, x);
                      return false;
                    }
                  }
                return true;
              });

  exact_check("original.htilde_factorization", "tilde-H = B(lambda) F(lambda)",
              [&](R& res, std::string& w) {
                int blk = x_max + 1;
                Mat h, f, b;
                if (finite) {
                  h = op_h_tilde(spec, blk);
                  f = op_forward(spec, blk - 1, blk);
                  b = op_backward(spec, blk, blk - 1);
                } else {
                  h = op_h_tilde(spec, blk + 2);
                  f = op_forward(spec, blk + 1, blk + 2);
                  b = op_backward(spec, blk + 2, blk + 1);
                }
                Mat prod = b * f;
                for (int i = 0; i < blk; ++i)
                  for (int j = 0; j < blk; ++j)
                    if (prod(i, j) != h(i, j)) {
                      res = prod(i, j) - h(i, j);
                      w = "entry (" + std::to_string(i) + "," + std::to_string(j) + ")";
                      return false;
                    }
                return true;
              });

  exact_check("original.eigen_matrix", "tilde-H P_n = E_n P_n as a matrix identity",
              [&](R& res, std::string& w) {
                int blk = x_max + 1;
                int rows = finite ? blk : blk + 2;
                Mat h = op_h_tilde(spec, rows);
                for (int n = 0; n <= n_max; ++n) {
                  Vec v(rows);
                  for (int x = 0; x < rows; ++x)
                    v(x) = x < static_cast<int>(base.P[n].size()) ? base.P[n][x]
                                                                  : poly_value(spec, n, x);
                  Vec hv = h * v;
                  for (int x = 0; x < blk; ++x) {
                    R r = hv(x) - base.energies[n] * v(x);
                    if (r != 0) {
                      res = r;
                      w = loc(-1, n, -1, x);
                      return false;
                    }
                  }
                }
                return true;
              });

  exact_check("original.potential_factorization",
              "B varphi(x;+delta~) [sqrt(kappa) varphi(x+1/2;+delta~)] = -kappa v1B v2B; "
              "D analogue with x-1/2",
              [&](R& res, std::string& w) {
                auto st = shift_delta_tilde(spec);
                R kap = spec.kappa();
                for (int x = 0; x <= x_max; ++x) {
                  auto v = v_factors(spec, x);
                  R rB = base.B[x] * aux_varphi(st, x) * sqrt_kappa_varphi_half(st, x, true) +
                         kap * v.v1B * v.v2B;
                  if (rB != 0) {
                    res = rB;
                    w = "B " + loc(-1, -1, -1, x);
                    return false;
                  }
                  R rD = base.D[x] * aux_varphi(st, x) * sqrt_kappa_varphi_half(st, x, false) +
                         kap * v.v1D * v.v2D;
                  if (rD != 0) {
                    res = rD;
                    w = "D " + loc(-1, -1, -1, x);
                    return false;
                  }
                }
                return true;
              });

  exact_check("original.shape_invariance",
              "B(x+1)D(x+1) = kappa^2 B(x;+delta)D(x+1;+delta) and "
              "B(x)+D(x+1) = kappa(B(x;+delta)+D(x;+delta)) + E_1",
              [&](R& res, std::string& w) {
                R kap = spec.kappa();
                for (int x = 0; x <= x_max - 1; ++x) {
                  R r1 = base.B[x + 1] * base.D[x + 1] -
                         kap * kap * potential_B(spd, x) * potential_D(spd, x + 1);
                  if (r1 != 0) {
                    res = r1;
                    w = "cond1 " + loc(-1, -1, -1, x);
                    return false;
                  }
                  R r2 = base.B[x] + base.D[x + 1] -
                         kap * (potential_B(spd, x) + potential_D(spd, x)) -
                         base.energies[1];
                  if (r2 != 0) {
                    res = r2;
                    w = "cond2 " + loc(-1, -1, -1, x);
                    return false;
                  }
                }
                return true;
              });

  if (finite) {
    exact_check("original.orthogonality", "sum phi0^2 P_n P_m = delta_nm / d_n^2",
                [&](R& res, std::string& w) {
                  for (int n = 0; n <= n_max; ++n)
                    for (int m = n; m <= n_max; ++m) {
                      R s(0);
                      for (int x = 0; x <= x_max; ++x)
                        s += base.phi0_sq[x] * base.P[n][x] * base.P[m][x];
                      R target = n == m ? R(1) / c_dn2(spec, n).rational_part : R(0);
                      if (s != target) {
                        res = s - target;
                        w = loc(-1, n, m, -1);
                        return false;
                      }
                    }
                  return true;
                });
  } else {
    orthogonality_infinite();
  }
}

void Suite::orthogonality_infinite() {
  if (!wanted("original.orthogonality")) return;
  // off-diagonal entries: exact window sum within the certified tail
  bool pass = true;
  std::string witness;
  R worst_tail(0);
  std::vector<R> cb;
  for (int n = 0; n <= n_max; ++n) cb.push_back(coeff_bound(original_coeffs(n)));
  R wt;
  if (!weight_tail(spec, sum_max, wt)) {
    row("original.orthogonality", "windowed orthogonality with certified tail", false,
        "1", "tail ratio not < 1");
    return;
  }
  MpFloat worst_diag(0);
  MpFloat tol = pow(MpFloat(2), -(float_precision_bits - 32));
  for (int n = 0; n <= n_max && pass; ++n)
    for (int m = n; m <= n_max && pass; ++m) {
      R s(0);
      for (int x = 0; x <= sum_max; ++x)
        s += base.phi0_sq[x] * base.P[n][x] * base.P[m][x];
      R tail = cb[n] * cb[m] * wt;
      if (tail > worst_tail) worst_tail = tail;
      if (!(tail < opt.tail_tol)) {
        pass = false;
        witness = "tail bound above tolerance " + loc(-1, n, m, -1);
        break;
      }
      if (n != m) {
        if (!(abs_val(s) <= tail)) {
          pass = false;
          witness = loc(-1, n, m, -1);
        }
      } else {
        MpFloat target = 1 / norm_value(c_dn2(spec, n), spec.q);
        MpFloat scale = abs(target) > 1 ? abs(target) : MpFloat(1);
        MpFloat diff = abs(to_float(s) - target);
        if (diff > worst_diag) worst_diag = diff;
        if (!(diff <= to_float(tail) + tol * scale)) {
          pass = false;
          witness = loc(-1, n, m, -1);
        }
      }
    }
  row("original.orthogonality",
      "sum_{x<=X} phi0^2 P_n P_m matches delta_nm/d_n^2 within the certified tail",
      pass, pass ? to_decimal(worst_tail, 3) : "1",
      witness.empty() ? "window X=" + std::to_string(sum_max) : witness,
      ScalarTraits<MpFloat>::backend_name());
}

void Suite::deformed_checks(int ell) {
  const int xl = finite ? x_max - ell : x_max;
  const int nl = finite ? x_max - ell : n_max;
  const std::string L = "[ell=" + std::to_string(ell) + "] ";
  auto spd = shift_delta(spec);
  auto sl = shift_delta(spec, ell);
  auto slt = shift_delta_tilde(sl);
  auto sm = shift_delta(spec, ell - 1);
  auto smt = shift_delta_tilde(sm);
  const int ext = finite ? xl : std::max(xl + 2, sum_max);
  DTab t = make_dtab(spec, ell, ext, nl, /*faulted=*/true);

  exact_check("deformed.xi_normalized", L + "xi_ell(0) = 1",
              [&](R& res, std::string& w) {
                if (t.xi0[0] != 1) {
                  res = t.xi0[0] - R(1);
                  w = loc(ell, -1, -1, 0);
                  return false;
                }
                if (t.xi1[0] != 1) {
                  res = t.xi1[0] - R(1);
                  w = loc(ell, -1, -1, 0) + " at lambda+delta";
                  return false;
                }
                return true;
              });

  exact_check("deformed.xi_positivity", L + "xi_ell(x) > 0 for x = 0..x_max^ell+1",
              [&](R& res, std::string& w) {
                for (int x = 0; x <= xl + 1; ++x) {
                  if (!(t.xi0[x] > 0)) {
                    res = t.xi0[x];
                    w = loc(ell, -1, -1, x);
                    return false;
                  }
                  if (!(t.xi1[x] > 0)) {
                    res = t.xi1[x];
                    w = loc(ell, -1, -1, x) + " at lambda+delta";
                    return false;
                  }
                }
                return true;
              });

  exact_check("deformed.xi_forward",
              L + "(v1B xi(x) - v1D xi(x+1))/varphi = fhat_{ell,0} xi(x; lambda+delta)",
              [&](R& res, std::string& w) {
                R f0 = fhat(spec, ell, 0);
                for (int x = 0; x <= xl; ++x) {
                  auto v = v_factors(sl, x);
                  R left = (v.v1B * t.xi0[x] - v.v1D * t.xi0[x + 1]) / aux_varphi(slt, x);
                  R r = left - f0 * t.xi1[x];
                  if (r != 0) {
                    res = r;
                    w = loc(ell, -1, -1, x);
                    return false;
                  }
                }
                return true;
              });

  exact_check("deformed.xi_backward",
              L + "(v2B xi(x;+delta) - v2D xi(x-1;+delta))/varphi = bhat_{ell,0} xi(x)",
              [&](R& res, std::string& w) {
                R b0 = bhat(spec, ell, 0);
                for (int x = 0; x <= xl; ++x) {
                  auto v = v_factors(sm, x);
                  R left = v.v2B * t.xi1[x];
                  if (x > 0) left -= v.v2D * t.xi1[x - 1];
                  left /= aux_varphi(smt, x);
                  R r = left - b0 * t.xi0[x];
                  if (r != 0) {
                    res = r;
                    w = loc(ell, -1, -1, x);
                    return false;
                  }
                }
                return true;
              });

  exact_check("deformed.xi_difference_equation",
              L + "xi_ell satisfies the twisted difference equation, eigenvalue "
                  "E_ell(t(lambda))",
              [&](R& res, std::string& w) {
                auto tw = twisted_shifted(spec, ell);
                R ev = energy(twist(spec), ell);
                for (int x = 0; x <= xl; ++x) {
                  R left = potential_B(tw, x) * (t.xi0[x] - t.xi0[x + 1]);
                  if (x > 0) left += potential_D(tw, x) * (t.xi0[x] - t.xi0[x - 1]);
                  R r = left - ev * t.xi0[x];
                  if (r != 0) {
                    res = r;
                    w = loc(ell, -1, -1, x);
                    return false;
                  }
                }
                return true;
              });

  exact_check("deformed.boundary", L + "D_ell(0)=0 and B_ell(x_max^ell)=0 (finite)",
              [&](R& res, std::string& w) {
                if (t.D_ell[0] != 0) {
                  res = t.D_ell[0];
                  w = loc(ell, -1, -1, 0);
                  return false;
                }
                if (finite && t.B_ell[xl] != 0) {
                  res = t.B_ell[xl];
                  w = loc(ell, -1, -1, xl);
                  return false;
                }
                return true;
              });

  exact_check("deformed.positivity",
              L + "B_ell(x)>0 on [0,x_max^ell), D_ell(x)>0 on (0,x_max^ell]",
              [&](R& res, std::string& w) {
                int btop = finite ? xl - 1 : xl;
                for (int x = 0; x <= btop; ++x)
                  if (!(t.B_ell[x] > 0)) {
                    res = t.B_ell[x];
                    w = "B_ell " + loc(ell, -1, -1, x);
                    return false;
                  }
                for (int x = 1; x <= xl; ++x)
                  if (!(t.D_ell[x] > 0)) {
                    res = t.D_ell[x];
                    w = "D_ell " + loc(ell, -1, -1, x);
                    return false;
                  }
                return true;
              });

  exact_check("deformed.shape_invariance",
              L + "B_ell(x+1)D_ell(x+1) = kappa^2 B_ell(x;+delta)D_ell(x+1;+delta) "
                  "(arguments positive) and the diagonal condition with E_{ell,1}",
              [&](R& res, std::string& w) {
                R kap = spec.kappa();
                for (int x = 0; x <= xl - 1; ++x) {
                  R lhs = t.B_ell[x + 1] * t.D_ell[x + 1];
                  R rhs = kap * kap * deformed_B(spd, ell, x) * deformed_D(spd, ell, x + 1);
                  if (lhs - rhs != 0) {
                    res = lhs - rhs;
                    w = "cond1 " + loc(ell, -1, -1, x);
                    return false;
                  }
                  if (x + 1 <= xl - 1 && !(lhs > 0)) {
                    res = lhs;
                    w = "cond1 sign " + loc(ell, -1, -1, x);
                    return false;
                  }
                  R r2 = t.B_ell[x] + t.D_ell[x + 1] -
                         kap * (deformed_B(spd, ell, x) + deformed_D(spd, ell, x)) -
                         t.energies[1];
                  if (r2 != 0) {
                    res = r2;
                    w = "cond2 " + loc(ell, -1, -1, x);
                    return false;
                  }
                }
                return true;
              });

  exact_check("deformed.ground_state",
              L + "psi_ell(0)^2 = 1 and prod B_ell/D_ell = psi_ell^2 xi(x;+delta)^2",
              [&](R& res, std::string& w) {
                if (t.psi2v[0] != 1) {
                  res = t.psi2v[0] - R(1);
                  w = loc(ell, -1, -1, 0);
                  return false;
                }
                R prod(1);
                for (int x = 0; x <= xl; ++x) {
                  R rhs = t.psi2v[x] * t.xi1[x] * t.xi1[x];
                  if (prod != rhs) {
                    res = prod - rhs;
                    w = loc(ell, -1, -1, x);
                    return false;
                  }
                  if (x < xl) prod *= t.B_ell[x] / t.D_ell[x + 1];
                }
                return true;
              });

  exact_check("deformed.p0_identity", L + "P_{ell,0}(x) = xi_ell(x; lambda+delta)",
              [&](R& res, std::string& w) {
                if (opt.faults.is("fhat")) return true;  // skewed by construction
                for (int x = 0; x <= xl + 1; ++x) {
                  R r = t.P[0][x] - t.xi1[x];
                  if (r != 0) {
                    res = r;
                    w = loc(ell, 0, -1, x);
                    return false;
                  }
                }
                return true;
              });

  exact_check("deformed.normalization_degree",
              L + "P_{ell,n} has degree ell+n in eta(x; lambda+ell delta), P_{ell,n}(0)=1",
              [&](R& res, std::string& w) {
                for (int n = 0; n <= nl; ++n) {
                  if (t.P[n][0] != 1) {
                    res = t.P[n][0] - R(1);
                    w = loc(ell, n, -1, 0);
                    return false;
                  }
                  if (ell + n > t.x_max + 1) continue;
                  auto coeffs = deformed_coeffs(t, ell, n);
                  if (poly_degree(coeffs) != ell + n) {
                    res = R(poly_degree(coeffs) - (ell + n));
                    w = "degree " + loc(ell, n, -1, -1);
                    return false;
                  }
                  for (int x = ell + n + 1; x <= t.x_max + 1; ++x) {
                    R r = poly_eval(coeffs, sinusoidal(sl, x)) - t.P[n][x];
                    if (r != 0) {
                      res = r;
                      w = "postcheck " + loc(ell, n, -1, x);
                      return false;
                    }
                  }
                }
                return true;
              });

  exact_check("deformed.difference_equation",
              L + "tilde-H_ell P_{ell,n} = E_n(lambda+ell delta) P_{ell,n}",
              [&](R& res, std::string& w) {
                for (int n = 0; n <= nl; ++n)
                  for (int x = 0; x <= xl; ++x) {
                    R left = (t.B_ell[x] + t.D_ell[x]) * t.P[n][x];
                    left -= potential_B(sl, x) * t.xi0[x] / t.xi0[x + 1] * t.P[n][x + 1];
                    if (x > 0)
                      left -= potential_D(sl, x) * t.xi0[x + 1] / t.xi0[x] * t.P[n][x - 1];
                    R r = left - t.energies[n] * t.P[n][x];
                    if (r != 0) {
                      res = r;
                      w = loc(ell, n, -1, x);
                      return false;
                    }
                  }
                return true;
              });

  exact_check("deformed.constant_signs", L + "sign pattern of fhat, bhat, s_ell",
              [&](R& res, std::string& w) {
                bool neg = spec.family == Family::dH || spec.family == Family::dqH;
                for (int n = 0; n <= nl; ++n) {
                  R f = fhat(spec, ell, n), b = bhat(spec, ell, n);
                  if (neg ? !(f < 0) : !(f > 0)) {
                    res = f;
                    w = "fhat " + loc(ell, n, -1, -1);
                    return false;
                  }
                  if (!(b > 0)) {
                    res = b;
                    w = "bhat " + loc(ell, n, -1, -1);
                    return false;
                  }
                }
                R s = s_ell(spec, ell);
                if (neg ? !(s < 0) : !(s > 0)) {
                  res = s;
                  w = "s_ell " + loc(ell, -1, -1, -1);
                  return false;
                }
                return true;
              });

  exact_check("deformed.norm_consistency",
              L + "the two closed expressions for d_{ell,n}^2 agree exactly",
              [&](R& res, std::string& w) {
                for (int n = 0; n <= nl; ++n) {
                  auto e1 = c_dln2(ell, n);
                  auto e2 = c_dln2_second(ell, n);
                  bool ok = false;
                  if (!e1.has_infinite && !e2.has_infinite) {
                    ok = e1.rational_part == e2.rational_part;
                    if (!ok) res = e1.rational_part - e2.rational_part;
                  } else if (e1.z_den == e2.z_den) {
                    for (int j = 0; j <= 64 && !ok; ++j) {
                      if (e2.z_num * pow_int(spec.q, j) == e1.z_num)
                        ok = e1.rational_part ==
                             e2.rational_part * q_pochhammer(e2.z_num, spec.q, j);
                      else if (e1.z_num * pow_int(spec.q, j) == e2.z_num)
                        ok = e2.rational_part ==
                             e1.rational_part * q_pochhammer(e1.z_num, spec.q, j);
                    }
                    if (!ok) res = R(1);
                  } else {
                    res = R(1);
                  }
                  if (!ok) {
                    w = loc(ell, n, -1, -1);
                    return false;
                  }
                }
                return true;
              });

  {
    DTab td = make_dtab(spd, ell, finite ? xl - 1 : xl + 2, nl > 0 ? nl - 1 : 0,
                        /*faulted=*/false);

    exact_check("deformed.forward_shift",
                L + "F_ell P_{ell,n} = E_n(lambda+ell delta) P_{ell,n-1}(lambda+delta)",
                [&](R& res, std::string& w) {
                  if (opt.faults.is("fhat")) return true;  // skewed by construction
                  int top = finite ? xl - 1 : xl;
                  R b0 = potential_B(sl, 0);
                  for (int n = 1; n <= nl; ++n)
                    for (int x = 0; x <= top; ++x) {
                      R left = b0 / (aux_varphi(sl, x) * t.xi0[x + 1]) *
                               (t.xi1[x + 1] * t.P[n][x] - t.xi1[x] * t.P[n][x + 1]);
                      R r = left - t.energies[n] * td.P[n - 1][x];
                      if (r != 0) {
                        res = r;
                        w = loc(ell, n, -1, x);
                        return false;
                      }
                    }
                  return true;
                });

    exact_check("deformed.backward_shift",
                L + "B_ell P_{ell,n-1}(lambda+delta) = P_{ell,n} (b = 1)",
                [&](R& res, std::string& w) {
                  if (opt.faults.is("fhat")) return true;  // skewed by construction
                  R b0 = potential_B(sl, 0);
                  for (int n = 1; n <= nl; ++n)
                    for (int x = 0; x <= xl; ++x) {
                      R left = potential_B(sl, x) * t.xi0[x] * aux_varphi(sl, x) *
                               td.P[n - 1][x];
                      if (x > 0)
                        left -= potential_D(sl, x) * t.xi0[x + 1] * aux_varphi(sl, x - 1) *
                                td.P[n - 1][x - 1];
                      left /= b0 * t.xi1[x];
                      R r = left - t.P[n][x];
                      if (r != 0) {
                        res = r;
                        w = loc(ell, n, -1, x);
                        return false;
                      }
                    }
                  return true;
                });
  }

  exact_check("deformed.htilde_factorization", L + "tilde-H_ell = B_ell F_ell",
              [&](R& res, std::string& w) {
                DeformedTables<R> dt =
                    build_deformed_tables(spec, ell, finite ? xl : xl + 3, 0);
                int blk = xl + 1;
                Mat h, f, b;
                if (finite) {
                  h = op_h_tilde_deformed(dt, blk);
                  f = op_forward_deformed(dt, blk - 1, blk);
                  b = op_backward_deformed(dt, blk, blk - 1);
                } else {
                  h = op_h_tilde_deformed(dt, blk + 2);
                  f = op_forward_deformed(dt, blk + 1, blk + 2);
                  b = op_backward_deformed(dt, blk + 2, blk + 1);
                }
                Mat prod = b * f;
                for (int i = 0; i < blk; ++i)
                  for (int j = 0; j < blk; ++j)
                    if (prod(i, j) != h(i, j)) {
                      res = prod(i, j) - h(i, j);
                      w = "entry (" + std::to_string(i) + "," + std::to_string(j) + ")";
                      return false;
                    }
                return true;
              });

  if (finite) {
    exact_check("deformed.orthogonality",
                L + "sum psi^2/xi(1) P_{ell,n} P_{ell,m} = delta_nm / d_{ell,n}^2",
                [&](R& res, std::string& w) {
                  for (int n = 0; n <= nl; ++n)
                    for (int m = n; m <= nl; ++m) {
                      R s(0);
                      for (int x = 0; x <= xl; ++x)
                        s += t.psi2v[x] / t.xi0[1] * t.P[n][x] * t.P[m][x];
                      R target = n == m ? R(1) / c_dln2(ell, n).rational_part : R(0);
                      if (s != target) {
                        res = s - target;
                        w = loc(ell, n, m, -1);
                        return false;
                      }
                    }
                  return true;
                });

    exact_check("deformed.inner_product_chain",
                L + "sum psi^2 P_{ell,n} P_{ell,m} = xi(1) delta_nm / "
                    "d_n(lambda+ell delta+delta~)^2 (bhat/fhat) s_ell",
                [&](R& res, std::string& w) {
                  for (int n = 0; n <= nl; ++n)
                    for (int m = n; m <= nl; ++m) {
                      R s(0);
                      for (int x = 0; x <= xl; ++x)
                        s += t.psi2v[x] * t.P[n][x] * t.P[m][x];
                      R target(0);
                      if (n == m)
                        target = t.xi0[1] / c_dn2(slt, n).rational_part * c_bhat(ell, n) /
                                 c_fhat(ell, n) * c_s_ell(spec, ell);
                      if (s != target) {
                        res = s - target;
                        w = loc(ell, n, m, -1);
                        return false;
                      }
                    }
                  return true;
                });
  } else {
    deformed_orthogonality_infinite(ell, t);
  }

  if (wanted("deformed.zeros")) {
    bool pass = true;
    R res(0);
    std::string w;
    for (int n = 0; n <= nl && pass; ++n) {
      if (ell + n > t.x_max + 1) continue;
      auto coeffs = deformed_coeffs(t, ell, n);
      R hi = finite ? sinusoidal(sl, xl) : R(1);
      int cnt = sturm_count(coeffs, R(0), hi);
      if (poly_eval(coeffs, hi) == 0) --cnt;  // count the open interval
      if (cnt != n) {
        pass = false;
        res = R(cnt - n);
        w = loc(ell, n, -1, -1) + " count=" + std::to_string(cnt);
      }
    }
    row("deformed.zeros",
        L + "exactly n zeros of P_{ell,n} in (0, eta(x_max^ell; lambda+ell delta))",
        pass, pass ? "0" : to_fraction_string(res), w);
  }
}

void Suite::deformed_orthogonality_infinite(int ell, const DTab& t) {
  if (!wanted("deformed.orthogonality")) return;
  const std::string L = "[ell=" + std::to_string(ell) + "] ";
  const int nl = n_max;
  auto sl = shift_delta(spec, ell);
  std::vector<R> cb;
  for (int n = 0; n <= nl; ++n) cb.push_back(coeff_bound(deformed_coeffs(t, ell, n)));
  R m;
  bool mb = xi_lower_bound(xi_coeffs(ell), spec.q, sum_max, m);
  R wt;
  bool wb = weight_tail(sl, sum_max, wt);
  if (!mb || !wb) {
    row("deformed.orthogonality", L + "windowed orthogonality with certified tail",
        false, "1", "tail machinery not certified");
    return;
  }
  bool pass = true;
  std::string witness;
  R worst_tail(0);
  MpFloat tol = pow(MpFloat(2), -(float_precision_bits - 32));
  for (int n = 0; n <= nl && pass; ++n)
    for (int mm = n; mm <= nl && pass; ++mm) {
      R s(0);
      for (int x = 0; x <= sum_max; ++x)
        s += t.psi2v[x] / t.xi0[1] * t.P[n][x] * t.P[mm][x];
      R tail = cb[n] * cb[mm] / (m * m) * wt;
      if (tail > worst_tail) worst_tail = tail;
      if (!(tail < opt.tail_tol)) {
        pass = false;
        witness = "tail bound above tolerance " + loc(ell, n, mm, -1);
        break;
      }
      if (n != mm) {
        if (!(abs_val(s) <= tail)) {
          pass = false;
          witness = loc(ell, n, mm, -1);
        }
      } else {
        MpFloat target = 1 / norm_value(c_dln2(ell, n), spec.q);
        MpFloat scale = abs(target) > 1 ? abs(target) : MpFloat(1);
        if (!(abs(to_float(s) - target) <= to_float(tail) + tol * scale)) {
          pass = false;
          witness = loc(ell, n, mm, -1);
        }
      }
    }
  row("deformed.orthogonality",
      L + "sum_{x<=X} psi^2/xi(1) P_{ell,n} P_{ell,m} matches delta_nm/d_{ell,n}^2 "
          "within the certified tail",
      pass, pass ? to_decimal(worst_tail, 3) : "1",
      witness.empty() ? "window X=" + std::to_string(sum_max) : witness,
      ScalarTraits<MpFloat>::backend_name());
}

void Suite::intertwining_checks(int ell) {
  const int xl = finite ? x_max - ell : x_max;
  const int nl = finite ? x_max - ell : n_max;
  const std::string L = "[ell=" + std::to_string(ell) + "] ";
  auto sl = shift_delta(spec, ell);
  auto slt = shift_delta_tilde(sl);
  auto spd = shift_delta(spec);
  const int pad = finite ? 0 : 2;
  const int blk = xl + 1;

  DeformedTables<R> dt = build_deformed_tables(spec, ell, finite ? xl : xl + 3, 0);
  DeformedTables<R> dtd = build_deformed_tables(spd, ell, finite ? xl - 1 : xl + 3, 0);

  auto hb = [&](int x) { return hat_B(spec, ell, x); };
  auto hd = [&](int x) { return hat_D(spec, ell, x); };
  R c0 = c_fhat(ell, 0) * c_bhat(ell, 0);
  R kh = c_kappa_hat(ell);

  exact_check("intertwine.no_zero_modes",
              L + "det Ahat != 0: every Bhat_ell(x) is nonzero (sign-definite per family)",
              [&](R& res, std::string& w) {
                bool neg = spec.family == Family::dH || spec.family == Family::dqH;
                for (int x = 0; x <= xl; ++x) {
                  R b = hb(x);
                  if (b == 0 || (neg ? !(b < 0) : !(b > 0))) {
                    res = b;
                    w = loc(ell, -1, -1, x);
                    return false;
                  }
                }
                if (hd(0) != 0) {
                  res = hd(0);
                  w = "Dhat(0) " + loc(ell, -1, -1, 0);
                  return false;
                }
                return true;
              });

  exact_check("intertwine.hat_diag_plus",
              L + "Bhat(x)+Dhat(x) = kappahat (B(x;lambda+ell delta+delta~) + D(x;...) + "
                  "fhat_0 bhat_0)",
              [&](R& res, std::string& w) {
                for (int x = 0; x <= xl; ++x) {
                  R r = hb(x) + hd(x) -
                        kh * (potential_B(slt, x) + potential_D(slt, x) + c0);
                  if (r != 0) {
                    res = r;
                    w = loc(ell, -1, -1, x);
                    return false;
                  }
                }
                return true;
              });

  exact_check("intertwine.hat_offdiag_plus",
              L + "Bhat(x)Dhat(x+1) = kappahat^2 B(x;lambda+ell delta+delta~)D(x+1;...)",
              [&](R& res, std::string& w) {
                for (int x = 0; x <= xl - 1; ++x) {
                  R r = hb(x) * hd(x + 1) -
                        kh * kh * potential_B(slt, x) * potential_D(slt, x + 1);
                  if (r != 0) {
                    res = r;
                    w = loc(ell, -1, -1, x);
                    return false;
                  }
                }
                return true;
              });

  exact_check("intertwine.hat_diag_minus",
              L + "Bhat(x)+Dhat(x+1) = kappahat (B_ell(x)+D_ell(x)+fhat_0 bhat_0), "
                  "last row Bhat(x_max) = kappahat (D_ell(x_max)+fhat_0 bhat_0)",
              [&](R& res, std::string& w) {
                for (int x = 0; x <= xl - 1; ++x) {
                  R r = hb(x) + hd(x + 1) - kh * (dt.B_ell[x] + dt.D_ell[x] + c0);
                  if (r != 0) {
                    res = r;
                    w = loc(ell, -1, -1, x);
                    return false;
                  }
                }
                if (finite) {
                  R r = hb(xl) - kh * (dt.D_ell[xl] + c0);
                  if (r != 0) {
                    res = r;
                    w = "last row " + loc(ell, -1, -1, xl);
                    return false;
                  }
                }
                return true;
              });

  exact_check("intertwine.hat_offdiag_minus",
              L + "Bhat(x+1)Dhat(x+1) = kappahat^2 B_ell(x)D_ell(x+1)",
              [&](R& res, std::string& w) {
                for (int x = 0; x <= xl - 1; ++x) {
                  R r = hb(x + 1) * hd(x + 1) - kh * kh * dt.B_ell[x] * dt.D_ell[x + 1];
                  if (r != 0) {
                    res = r;
                    w = loc(ell, -1, -1, x);
                    return false;
                  }
                }
                return true;
              });

  Mat fh = op_fhat(dt, blk + pad);
  Mat bh = op_bhat(dt, blk + pad);

  exact_check("intertwine.factorized_plus",
              L + "Bhat_ell Fhat_ell = tilde-H(lambda+ell delta+delta~) + fhat_0 bhat_0",
              [&](R& res, std::string& w) {
                Mat h = op_h_tilde(slt, blk + pad);
                Mat prod = bh * fh;
                R cc = fhat(spec, ell, 0) * bhat(spec, ell, 0);
                for (int i = 0; i < blk; ++i)
                  for (int j = 0; j < blk; ++j) {
                    R want = h(i, j) + (i == j ? cc : R(0));
                    if (prod(i, j) != want) {
                      res = prod(i, j) - want;
                      w = "entry (" + std::to_string(i) + "," + std::to_string(j) + ")";
                      return false;
                    }
                  }
                return true;
              });

  exact_check("intertwine.factorized_minus",
              L + "Fhat_ell Bhat_ell = tilde-H_ell(lambda) + fhat_0 bhat_0",
              [&](R& res, std::string& w) {
                Mat h = op_h_tilde_deformed(dt, blk + pad);
                Mat prod = fh * bh;
                R cc = fhat(spec, ell, 0) * bhat(spec, ell, 0);
                for (int i = 0; i < blk; ++i)
                  for (int j = 0; j < blk; ++j) {
                    R want = h(i, j) + (i == j ? cc : R(0));
                    if (prod(i, j) != want) {
                      res = prod(i, j) - want;
                      w = "entry (" + std::to_string(i) + "," + std::to_string(j) + ")";
                      return false;
                    }
                  }
                return true;
              });

  // vectors of P_n(.; lambda+ell delta+delta~) and P_{ell,n}
  auto pn_vec = [&](int n) {
    Vec v(blk + pad);
    for (int x = 0; x < blk + pad; ++x) v(x) = poly_value(slt, n, x);
    return v;
  };
  auto pln_vec = [&](int n) {
    Vec v(blk + pad);
    for (int x = 0; x < blk + pad; ++x)
      v(x) = exceptional_bracket(spec, ell, n, x) / (c_fhat(ell, n) * aux_varphi(slt, x));
    return v;
  };

  exact_check("intertwine.hat_forward",
              L + "Fhat_ell P_n(lambda+ell delta+delta~) = fhat_{ell,n} P_{ell,n}",
              [&](R& res, std::string& w) {
                for (int n = 0; n <= nl; ++n) {
                  Vec lhs = fh * pn_vec(n);
                  Vec rhs = pln_vec(n);
                  R f = c_fhat(ell, n);
                  for (int x = 0; x < blk; ++x) {
                    R r = lhs(x) - f * rhs(x);
                    if (r != 0) {
                      res = r;
                      w = loc(ell, n, -1, x);
                      return false;
                    }
                  }
                }
                return true;
              });

  exact_check("intertwine.hat_backward",
              L + "Bhat_ell P_{ell,n} = bhat_{ell,n} P_n(lambda+ell delta+delta~)",
              [&](R& res, std::string& w) {
                for (int n = 0; n <= nl; ++n) {
                  Vec lhs = bh * pln_vec(n);
                  Vec pv = pn_vec(n);
                  R b = c_bhat(ell, n);
                  for (int x = 0; x < blk; ++x) {
                    R r = lhs(x) - b * pv(x);
                    if (r != 0) {
                      res = r;
                      w = loc(ell, n, -1, x);
                      return false;
                    }
                  }
                }
                return true;
              });

  exact_check("intertwine.hat_roundtrip",
              L + "Bhat Fhat P_n = (E_n(lambda+ell delta+delta~) + fhat_0 bhat_0) P_n",
              [&](R& res, std::string& w) {
                Mat prod = bh * fh;
                for (int n = 0; n <= nl; ++n) {
                  Vec pv = pn_vec(n);
                  Vec lhs = prod * pv;
                  R ev = energy(slt, n) + fhat(spec, ell, 0) * bhat(spec, ell, 0);
                  for (int x = 0; x < blk; ++x) {
                    R r = lhs(x) - ev * pv(x);
                    if (r != 0) {
                      res = r;
                      w = loc(ell, n, -1, x);
                      return false;
                    }
                  }
                }
                return true;
              });

  exact_check("intertwine.energy_factorization",
              L + "E_n(lambda+ell delta) = fhat_{ell,n} bhat_{ell,n} - fhat_0 bhat_0",
              [&](R& res, std::string& w) {
                for (int n = 0; n <= nl; ++n) {
                  R r = energy(sl, n) - (c_fhat(ell, n) * c_bhat(ell, n) - c0);
                  if (r != 0) {
                    res = r;
                    w = loc(ell, n, -1, -1);
                    return false;
                  }
                }
                return true;
              });

  exact_check("intertwine.shift_relation_forward",
              L + "shat(lambda+delta) Fhat(lambda+delta) F(lambda+ell delta+delta~) = "
                  "shat(lambda) F_ell(lambda) Fhat(lambda)",
              [&](R& res, std::string& w) {
                Mat fh_d = op_fhat(dtd, blk - 1 + pad);
                Mat f_mid = op_forward(slt, blk - 1 + pad, blk + pad);
                Mat fl = op_forward_deformed(dt, blk - 1 + pad, blk + pad);
                Mat lhs = s_hat(spd, ell) * (fh_d * f_mid);
                Mat rhs = s_hat(spec, ell) * (fl * fh);
                for (int i = 0; i < blk - 1; ++i)
                  for (int j = 0; j < blk; ++j)
                    if (lhs(i, j) != rhs(i, j)) {
                      res = lhs(i, j) - rhs(i, j);
                      w = "entry (" + std::to_string(i) + "," + std::to_string(j) + ")";
                      return false;
                    }
                return true;
              });

  exact_check("intertwine.shift_relation_backward",
              L + "shat(lambda) Fhat(lambda) B(lambda+ell delta+delta~) = "
                  "shat(lambda+delta) B_ell(lambda) Fhat(lambda+delta)",
              [&](R& res, std::string& w) {
                Mat fh_d = op_fhat(dtd, blk - 1 + pad);
                Mat b_mid = op_backward(slt, blk + pad, blk - 1 + pad);
                Mat bl = op_backward_deformed(dt, blk + pad, blk - 1 + pad);
                Mat lhs = s_hat(spec, ell) * (fh * b_mid);
                Mat rhs = s_hat(spd, ell) * (bl * fh_d);
                for (int i = 0; i < blk; ++i)
                  for (int j = 0; j < blk - 1; ++j)
                    if (lhs(i, j) != rhs(i, j)) {
                      res = lhs(i, j) - rhs(i, j);
                      w = "entry (" + std::to_string(i) + "," + std::to_string(j) + ")";
                      return false;
                    }
                return true;
              });
}

void Suite::float_sanity_checks() {
  const MpFloat tol = pow(MpFloat(2), -(float_precision_bits - 16));
  FSpec fs = to_float_spec(spec);
  const int pad = finite ? 0 : 2;
  const int blk = x_max + 1;

  if (wanted("float.symmetric_factorization")) {
    FMat h = op_h_symmetric(fs, blk + pad);
    FMat a = op_a(fs, blk + pad);
    FMat prod = a.transpose() * a;
    MpFloat worst(0);
    std::string w;
    for (int i = 0; i < blk; ++i)
      for (int j = 0; j < blk; ++j) {
        MpFloat d = abs(prod(i, j) - h(i, j));
        if (d > worst) {
          worst = d;
          w = "entry (" + std::to_string(i) + "," + std::to_string(j) + ")";
        }
      }
    row("float.symmetric_factorization", "H = Adagger A entrywise (symmetric gauge)",
        worst <= tol, to_decimal(worst, 3), worst <= tol ? "" : w,
        ScalarTraits<MpFloat>::backend_name());
  }

  if (finite && wanted("float.spectrum")) {
    FMat h = op_h_symmetric(fs, blk);
    MpFloat worst(0);
    std::string w;
    for (int n = 0; n <= n_max; ++n) {
      MpFloat r = char_poly_residual(h, to_float(base.energies[n]));
      if (r > worst) {
        worst = r;
        w = loc(-1, n, -1, -1);
      }
    }
    row("float.spectrum", "char poly of H vanishes at every E_n", worst <= tol,
        to_decimal(worst, 3), worst <= tol ? "" : w,
        ScalarTraits<MpFloat>::backend_name());
  }

  if (wanted("float.eigenfunction_maps")) {
    // A(lambda) phi_n = f_n/sqrt(B(0)) phi_{n-1}(lambda+delta) and the
    // dagger counterpart, spot-checked for the lowest few n
    FSpec fsd = to_float_spec(shift_delta(spec));
    int rows = blk + pad;
    FMat a = op_a(fs, rows);
    MpFloat b0 = sqrt(potential_B(fs, 0));
    MpFloat worst(0), scale(1);
    std::string w;
    int ncap = std::min(n_max, 3);
    for (int n = 1; n <= ncap; ++n) {
      FVec phi_n(rows), phi_d(rows);
      for (int x = 0; x < rows; ++x) {
        phi_n(x) = sqrt(weight_phi0_sq_product(fs, x)) * poly_value(fs, n, x);
        phi_d(x) = sqrt(weight_phi0_sq_product(fsd, x)) * poly_value(fsd, n - 1, x);
      }
      FVec lhs = a * phi_n;
      MpFloat fn = to_float(base.energies[n]) / b0;
      for (int x = 0; x < blk - (finite ? 0 : 1); ++x) {
        MpFloat d = abs(lhs(x) - fn * phi_d(x));
        if (abs(phi_n(x)) > scale) scale = abs(phi_n(x));
        if (d > worst) {
          worst = d;
          w = loc(-1, n, -1, x);
        }
      }
      FVec lhs2 = a.transpose() * phi_d;
      for (int x = 0; x < blk - (finite ? 0 : 1); ++x) {
        MpFloat d = abs(lhs2(x) - b0 * phi_n(x));
        if (d > worst) {
          worst = d;
          w = loc(-1, n, -1, x);
        }
      }
    }
    bool pass = worst <= tol * scale;
    row("float.eigenfunction_maps",
        "A phi_n = E_n/sqrt(B(0)) phi_{n-1}(+delta); Adagger phi_{n-1}(+delta) = "
        "sqrt(B(0)) phi_n",
        pass, to_decimal(worst, 3), pass ? "" : w,
        ScalarTraits<MpFloat>::backend_name());
  }

  // the sqrt-laden intertwiner map, real only where Bhat, Dhat, s_ell > 0
  bool real_hat = spec.family == Family::R || spec.family == Family::qR ||
                  spec.family == Family::lqJ;
  if (real_hat && wanted("float.hat_eigenfunction_maps")) {
    MpFloat worst(0), scale(1);
    std::string w;
    for (int ell : opt.ells) {
      if (finite && ell >= spec.n_value()) continue;
      const int xl = finite ? x_max - ell : x_max;
      const int rows = xl + 1 + pad;
      auto sl = shift_delta(spec, ell);
      auto slt = shift_delta_tilde(sl);
      FSpec fslt = to_float_spec(slt);
      FMat ahat = FMat::Zero(rows, rows);
      for (int x = 0; x < rows; ++x) {
        ahat(x, x) = sqrt(to_float(hat_B(spec, ell, x)));
        if (x + 1 < rows) ahat(x, x + 1) = -sqrt(to_float(hat_D(spec, ell, x + 1)));
      }
      MpFloat pre = sqrt(to_float(xi_value(spec, ell, 1) * s_ell(spec, ell)) /
                         to_float(kappa_hat(spec, ell)));
      int ncap = std::min(finite ? xl : n_max, 2);
      for (int n = 0; n <= ncap; ++n) {
        FVec plus(rows), minus(rows);
        for (int x = 0; x < rows; ++x) {
          plus(x) = sqrt(weight_phi0_sq_product(fslt, x)) * poly_value(fslt, n, x);
          minus(x) = sqrt(to_float(psi_sq(spec, ell, x))) *
                     to_float(exceptional_value(spec, ell, n, x));
        }
        FVec lhs = ahat * plus;
        MpFloat fn = to_float(fhat(spec, ell, n));
        for (int x = 0; x < xl + 1 - (finite ? 0 : 1); ++x) {
          MpFloat d = abs(pre * lhs(x) / fn - minus(x));
          if (abs(minus(x)) > scale) scale = abs(minus(x));
          if (d > worst) {
            worst = d;
            w = loc(ell, n, -1, x);
          }
        }
      }
    }
    bool pass = worst <= tol * scale;
    row("float.hat_eigenfunction_maps",
        "phi_{ell,n} = sqrt(xi(1) s_ell / kappahat) Ahat phi_n(lambda+ell "
        "delta+delta~) / fhat_{ell,n}",
        pass, to_decimal(worst, 3), pass ? "" : w,
        ScalarTraits<MpFloat>::backend_name());
  }
}

void Suite::run() {
  rep.family = family_name(spec.family);
  for (const auto& v : spec.lam) rep.lambda.push_back(to_fraction_string(v));
  if (is_q_family(spec.family)) rep.q = to_fraction_string(spec.q);
  rep.grid_n = spec.grid_n;
  rep.ells = opt.ells;

  auto validation = validate_parameters(spec);
  auto collisions = denominator_collisions(spec);
  if (!validation.admissible() || !collisions.admissible()) {
    std::string clauses;
    for (const auto& v : validation.violations) clauses += v.clause + "; ";
    for (const auto& v : collisions.violations) clauses += v.clause + "; ";
    row("validate.parameters", "published admissible ranges, denominators nonzero",
        false, "1", clauses);
    if (!opt.force) return;
  } else {
    row("validate.parameters", "published admissible ranges, denominators nonzero",
        true, "0", "");
  }

  try {
    if (!finite) grow_sum_window();
    // beyond x_max the finite-grid potentials may legitimately vanish, so the
    // padded window applies to infinite families only
    base = build_system_tables(spec, finite ? x_max : std::max(x_max + 2, sum_max),
                               n_max);
    original_checks();
    for (int ell : opt.ells) {
      if (ell <= 0) continue;
      if (finite && ell >= spec.n_value()) continue;
      deformed_checks(ell);
      intertwining_checks(ell);
    }
    if (opt.float_checks) float_sanity_checks();
  } catch (const std::exception& e) {
    row("suite.abort", "table construction failed", false, "1", e.what());
  }
}

}  // namespace

VerificationReport run_suite(const FamilySpec<Rational>& spec, const SuiteOptions& opt) {
  Suite s(spec, opt);
  s.run();
  return std::move(s.rep);
}

}  // namespace xdop
