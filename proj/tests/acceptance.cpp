// Acceptance runner: one line per criterion, nonzero exit iff any fails.
// Every tolerance is fixed here, in code.

#include <iostream>
#include <random>
#include <set>

#include "xdop/limits.hpp"
#include "xdop/verify.hpp"

using namespace xdop;
using R = Rational;
using Spec = FamilySpec<R>;

namespace {

int g_failures = 0;

void report(int idx, const std::string& what, bool pass, const std::string& detail = "") {
  std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << idx << ": " << what;
  if (!detail.empty()) std::cout << "  [" << detail << "]";
  std::cout << std::endl;
  if (!pass) ++g_failures;
}

Spec racah8() {
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

Spec dual_hahn8() {
  Spec s;
  s.family = Family::dH;
  s.lam = {R(1), R(2), R(8)};
  s.grid_n = 8;
  return s;
}

Spec dual_q_hahn6() {
  Spec s;
  s.family = Family::dqH;
  s.lam = {R(1, 2), R(1, 4), R(1, 64)};
  s.q = R(1, 2);
  s.grid_n = 6;
  return s;
}

Spec lqj_half() {
  Spec s;
  s.family = Family::lqJ;
  s.lam = {R(1, 2), R(1, 2)};
  s.q = R(1, 2);
  return s;
}

SuiteOptions lqj_options() {
  SuiteOptions opt;
  opt.ells = {1, 2, 3};
  opt.window = 24;
  opt.n_cap = 5;
  opt.tail_tol = R(1, pow_int(Integer(10), 30));  // certified tail < 1e-30
  return opt;
}

// true iff every check whose name contains one of the tokens passed with
// residual exactly 0 (exact rows) and at least one such row exists per token
bool exact_rows_pass(const VerificationReport& rep, const std::vector<std::string>& tokens,
                     std::string& detail) {
  for (const auto& tok : tokens) {
    int seen = 0;
    for (const auto& c : rep.checks) {
      if (c.name.find(tok) == std::string::npos) continue;
      ++seen;
      if (!c.pass || (c.backend == std::string("exact") && c.residual != "0")) {
        detail = c.name + " " + c.witness;
        return false;
      }
    }
    if (seen == 0) {
      detail = "missing check " + tok;
      return false;
    }
  }
  return true;
}

void criterion_1() {
  const std::vector<std::string> tokens{
      "original.boundary",        "original.pn_at_1",
      "original.difference_equation", "original.forward_shift",
      "original.backward_shift",  "original.orthogonality",
      "original.potential_factorization"};
  bool pass = true;
  std::string detail;
  for (const Spec& s : {racah8(), q_racah6()}) {
    SuiteOptions opt;
    opt.ells = {};
    opt.float_checks = false;
    auto rep = run_suite(s, opt);
    if (!exact_rows_pass(rep, tokens, detail) || !rep.all_pass()) {
      pass = false;
      if (detail.empty()) detail = rep.text_summary();
      detail = std::string(family_name(s.family)) + ": " + detail;
      break;
    }
  }
  report(1, "exact original-system suite, R(N=8) and qR(N=6), residual 0", pass, detail);
}

void criterion_2() {
  const std::vector<std::string> tokens{
      "deformed.xi_positivity",   "deformed.xi_forward",
      "deformed.xi_backward",     "deformed.xi_difference_equation",
      "deformed.shape_invariance", "deformed.p0_identity",
      "deformed.normalization_degree", "deformed.orthogonality",
      "deformed.norm_consistency", "deformed.difference_equation"};
  bool pass = true;
  std::string detail;
  for (const Spec& s : {racah8(), q_racah6()}) {
    SuiteOptions opt;
    opt.ells = {1, 2, 3};
    opt.float_checks = false;
    auto rep = run_suite(s, opt);
    if (!exact_rows_pass(rep, tokens, detail) || !rep.all_pass()) {
      pass = false;
      detail = std::string(family_name(s.family)) + ": " + detail;
      break;
    }
  }
  report(2, "exact deformed-system suite, ell in {1,2,3}, residual 0", pass, detail);
}

void criterion_3() {
  const std::vector<std::string> tokens{
      "intertwine.factorized_plus",        "intertwine.factorized_minus",
      "intertwine.hat_forward",            "intertwine.hat_backward",
      "intertwine.shift_relation_forward", "intertwine.shift_relation_backward",
      "intertwine.energy_factorization"};
  bool pass = true;
  std::string detail;
  for (const Spec& s : {racah8(), q_racah6(), dual_hahn8(), dual_q_hahn6(), lqj_half()}) {
    SuiteOptions opt = is_finite_family(s.family) ? SuiteOptions{} : lqj_options();
    opt.ells = {1, 2, 3};
    opt.float_checks = false;
    auto rep = run_suite(s, opt);
    if (!exact_rows_pass(rep, tokens, detail)) {
      pass = false;
      detail = std::string(family_name(s.family)) + ": " + detail;
      break;
    }
    // everything else must pass too, except that the pinned lqJ point a = b
    // sits on the ell = 1 degeneracy of the deforming polynomial, where the
    // degree claim itself fails; the identity rows above still hold there
    for (const auto& c : rep.checks) {
      bool degenerate_row = s.family == Family::lqJ &&
                            c.name == "deformed.normalization_degree" &&
                            c.identity.find("ell=1") != std::string::npos;
      if (!c.pass && !degenerate_row) {
        pass = false;
        detail = std::string(family_name(s.family)) + ": " + c.name + " " + c.witness;
        break;
      }
    }
    if (!pass) break;
  }
  report(3, "exact intertwining suite on all five families, residual 0", pass, detail);
}

void criterion_4() {
  bool pass = true;
  std::string detail;
  for (const Spec& s : {racah8(), q_racah6()}) {
    SuiteOptions opt;
    opt.ells = {1, 2, 3};
    opt.only = {"deformed.zeros"};
    opt.float_checks = false;
    auto rep = run_suite(s, opt);
    int rows = 0;
    for (const auto& c : rep.checks)
      if (c.name == "deformed.zeros") {
        ++rows;
        if (!c.pass) {
          pass = false;
          detail = std::string(family_name(s.family)) + ": " + c.witness;
        }
      }
    if (rows != 3) {
      pass = false;
      detail = "expected 3 zero-count rows";
    }
  }
  report(4, "Sturm-exact root counts equal n for all (ell, n)", pass, detail);
}

void criterion_5() {
  const MpFloat bound("1e-8");
  bool pass = true;
  std::string detail;

  auto qd = limit_qR_to_dqH(R(1, 2), 4, R(1, 2), R(1, 4),
                            {R(1, 100), R(1, 10000), R(1, 1000000)});
  if (!qd.monotone_decreasing_last3()) {
    pass = false;
    detail = "qR-to-dqH not monotone";
  }
  for (const auto& o : qd.orders)
    if (!(o >= 1)) {
      pass = false;
      detail = "qR-to-dqH empirical order " + o.str(6) + " < 1";
    }
  if (!(qd.extrapolated_dev < bound)) {
    pass = false;
    detail = "qR-to-dqH extrapolated " + qd.extrapolated_dev.str(6);
  }

  auto ks = q_ladder(4, 10);
  auto dh = limit_dqH_to_dH(R(1), R(2), 6, ks);
  if (!dh.monotone_decreasing_last3()) {
    pass = false;
    detail = "dqH-to-dH not monotone";
  }
  if (!(dh.extrapolated_dev < bound)) {
    pass = false;
    detail = "dqH-to-dH extrapolated " + dh.extrapolated_dev.str(6);
  }

  auto qr = limit_qR_to_R({R(-8), R(10), R(2), R(3, 2)}, 8, ks);
  if (!qr.monotone_decreasing_last3()) {
    pass = false;
    detail = "qR-to-R not monotone";
  }
  if (!(qr.extrapolated_dev < bound)) {
    pass = false;
    detail = "qR-to-R extrapolated " + qr.extrapolated_dev.str(6);
  }

  report(5, "limit sweeps: monotone, order >= 1 (t-sweep), final deviation < 1e-8",
         pass, detail.empty() ? "extrapolated " + qd.extrapolated_dev.str(3) + ", " +
                                    dh.extrapolated_dev.str(3) + ", " +
                                    qr.extrapolated_dev.str(3)
                              : detail);
}

void criterion_6() {
  bool pass = true;
  std::string detail;
  for (const char* fault : {"dn2", "dln2", "fhat", "bhat", "sl", "kappahat"}) {
    SuiteOptions opt;
    opt.ells = {1, 2};
    opt.float_checks = false;
    opt.faults.target = fault;
    auto rep = run_suite(racah8(), opt);
    if (rep.failure_count() < 1) {
      pass = false;
      detail = std::string("fault ") + fault + " went undetected";
    }
  }
  report(6, "each of 6 injected constant corruptions trips a named check", pass, detail);
}

struct Rng {
  std::mt19937 gen{20260810};
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen); }
  // rational in (0, top] with denominator <= 8
  R positive(int top) {
    int den = uniform(1, 8);
    int num = uniform(1, top * den);
    return R(num, den);
  }
  // rational strictly inside (0, 1)
  R unit() {
    int den = uniform(2, 9);
    int num = uniform(1, den - 1);
    return R(num, den);
  }
};

Spec draw_spec(Family fam, Rng& rng) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Spec s;
    s.family = fam;
    int N = rng.uniform(4, 8);
    switch (fam) {
      case Family::R: {
        R d = rng.positive(3);
        R b = d + N + rng.positive(3);
        R c = rng.unit() * (1 + d);
        s.lam = {R(-N), b, c, d};
        s.grid_n = N;
        bool collide = false;
        // d~ = 0 makes the d_n^2 closed form divide by zero
        if (R(-N) + b + c - d - 1 == 0) collide = true;
        // the deforming polynomial loses degree when c-1-(a+b-d) is a
        // negative integer
        R dt_twist = c - 1 - (b - d - N);
        for (int j = 1; j <= 2 * N; ++j)
          if (dt_twist == R(-j)) collide = true;
        if (collide) continue;
        break;
      }
      case Family::qR: {
        static const R qs[] = {R(1, 2), R(1, 3), R(2, 3), R(1, 4), R(3, 4), R(2, 5)};
        s.q = qs[rng.uniform(0, 5)];
        R d = rng.unit();
        R b = d * pow_int(s.q, N + 1) * rng.unit();
        R c = s.q * d + rng.unit() * (1 - s.q * d);
        s.lam = {pow_int(s.q, -N), b, c, d};
        s.grid_n = N;
        // avoid the twisted-denominator collisions b = d q^j and the
        // degenerate deforming polynomials cd/(ab q) = q^-m
        bool collide = false;
        for (int j = 0; j <= 3 * N + 4; ++j)
          if (b == d * pow_int(s.q, j)) collide = true;
        R dt_twist = c * d / (s.lam[0] * b * s.q);
        for (int m = 1; m <= 2 * N; ++m)
          if (dt_twist == pow_int(s.q, -m)) collide = true;
        if (collide) continue;
        break;
      }
      case Family::dH: {
        s.lam = {rng.positive(4), R(1) + rng.positive(4), R(N)};
        s.grid_n = N;
        break;
      }
      case Family::dqH: {
        static const R qs[] = {R(1, 2), R(1, 3), R(2, 3), R(3, 4)};
        s.q = qs[rng.uniform(0, 3)];
        s.lam = {rng.unit(), rng.unit() * s.q, pow_int(s.q, N)};
        s.grid_n = N;
        break;
      }
      case Family::lqJ: {
        static const R qs[] = {R(1, 2), R(1, 3), R(2, 3)};
        s.q = qs[rng.uniform(0, 2)];
        // keep aq <= 3/4 so certified windows stay small
        R a = rng.unit() * (R(3, 4) / s.q);
        R b = rng.unit() / s.q;
        s.lam = {a, b};
        // a = b q^m collapses the degree of the deforming polynomial
        bool collide = false;
        for (int m = 0; m <= 4; ++m)
          if (a == b * pow_int(s.q, m)) collide = true;
        if (collide) continue;
        break;
      }
    }
    if (validate_parameters(s).admissible() && denominator_collisions(s).admissible())
      return s;
  }
  throw std::runtime_error("could not draw admissible parameters");
}

void criterion_7() {
  bool pass = true;
  std::string detail;
  Rng rng;
  const Family fams[] = {Family::R, Family::qR, Family::dH, Family::dqH, Family::lqJ};
  for (Family fam : fams) {
    for (int draw = 0; draw < 50 && pass; ++draw) {
      Spec s = draw_spec(fam, rng);
      SuiteOptions opt;
      opt.ells = {1, 2};
      opt.float_checks = false;
      if (!is_finite_family(fam)) {
        opt.window = 10;
        opt.n_cap = 3;
        opt.tail_tol = R(1, pow_int(Integer(10), 8));
      }
      auto rep = run_suite(s, opt);
      if (!rep.all_pass()) {
        pass = false;
        detail = std::string(family_name(fam)) + " draw " + std::to_string(draw);
        for (const auto& c : rep.checks)
          if (!c.pass) detail += " | " + c.name + " " + c.witness;
      }
    }
  }
  report(7, "50 random admissible draws per family pass the full exact suite", pass,
         detail);
}

}  // namespace

int main() {
  set_float_precision(256);
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  std::cout << (g_failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED") << " ("
            << (7 - g_failures) << "/7)" << std::endl;
  return g_failures == 0 ? 0 : 1;
}
