#include "xdop/limits.hpp"

#include <map>
#include <sstream>

#include "xdop/base_system.hpp"

namespace xdop {

namespace {

using F = MpFloat;
using FSpec = FamilySpec<F>;

// Neville extrapolation of vals(h) to h = 0.
F neville_at_zero(const std::vector<F>& hs, std::vector<F> vals) {
  const size_t n = hs.size();
  for (size_t j = 1; j < n; ++j)
    for (size_t i = n - 1; i >= j; --i) {
      vals[i] = vals[i] + (vals[i] - vals[i - 1]) * hs[i] / (hs[i - j] - hs[i]);
      if (i == j) break;
    }
  return vals[n - 1];
}

// One compared quantity: per-step differences against the fixed target value.
struct Sweep {
  std::vector<F> hs;
  std::map<std::string, std::pair<std::vector<F>, F>> series;  // diffs, |ref| scale
  std::vector<F> step_dev;

  void begin_step(const F& h) {
    hs.push_back(h);
    step_dev.push_back(F(0));
  }
  void add(const std::string& key, const F& value, const F& ref) {
    add_scaled(key, value, ref, abs(ref) > 1 ? abs(ref) : F(1));
  }
  void add_scaled(const std::string& key, const F& value, const F& ref, const F& scale) {
    F d = abs(value - ref) / scale;
    if (d > step_dev.back()) step_dev.back() = d;
    auto& e = series[key];
    e.first.push_back(value - ref);
    e.second = scale;
  }

  void finish(LimitReport& rep) {
    rep.step_h = hs;
    rep.step_dev = step_dev;
    for (size_t i = 0; i + 1 < hs.size(); ++i)
      rep.orders.push_back(log(step_dev[i] / step_dev[i + 1]) / log(hs[i] / hs[i + 1]));
    rep.extrapolated_dev = F(0);
    for (const auto& [key, e] : series) {
      F ex = abs(neville_at_zero(hs, e.first)) / e.second;
      if (ex > rep.extrapolated_dev) {
        rep.extrapolated_dev = ex;
        rep.worst_quantity = key;
      }
    }
  }
};

// Adds the standard quantity set: B, D on the grid, E_n, and P_n gridwise.
// When normalized, potentials and energies are divided by E_1 and eta by
// eta(1) on each side. Polynomial deviations are measured against the
// polynomial's sup norm on the grid, so values that are small only through
// term cancellation do not dominate the metric.
void compare_systems(Sweep& sw, const FSpec& src, const FSpec& dst, int x_top, int n_top,
                     bool normalized) {
  F es = normalized ? energy(src, 1) : F(1);
  F ed = normalized ? energy(dst, 1) : F(1);
  F hs = normalized ? sinusoidal(src, 1) : F(1);
  F hd = normalized ? sinusoidal(dst, 1) : F(1);
  for (int x = 0; x <= x_top; ++x) {
    sw.add("B x=" + std::to_string(x), potential_B(src, x) / es, potential_B(dst, x) / ed);
    sw.add("D x=" + std::to_string(x), potential_D(src, x) / es, potential_D(dst, x) / ed);
    if (normalized)
      sw.add("eta x=" + std::to_string(x), sinusoidal(src, x) / hs,
             sinusoidal(dst, x) / hd);
  }
  for (int n = 0; n <= n_top; ++n) {
    sw.add("E n=" + std::to_string(n), energy(src, n) / es, energy(dst, n) / ed);
    std::vector<F> ref(x_top + 1);
    F sup(1);
    for (int x = 0; x <= x_top; ++x) {
      ref[x] = poly_value(dst, n, x);
      if (abs(ref[x]) > sup) sup = abs(ref[x]);
    }
    for (int x = 0; x <= x_top; ++x)
      sw.add_scaled("P n=" + std::to_string(n) + " x=" + std::to_string(x),
                    poly_value(src, n, x), ref[x], sup);
  }
}

FSpec make_fspec(Family fam, std::vector<F> lam, const F& q, std::optional<int> N) {
  FSpec s;
  s.family = fam;
  s.lam = std::move(lam);
  s.q = q;
  s.grid_n = N;
  return s;
}

}  // namespace

bool LimitReport::monotone_decreasing_last3() const {
  const size_t n = step_dev.size();
  if (n < 3) return false;
  return step_dev[n - 3] > step_dev[n - 2] && step_dev[n - 2] > step_dev[n - 1];
}

std::string LimitReport::text_table() const {
  std::ostringstream os;
  os << "# " << which << "\n";
  os << "# step  h  max_rel_dev  order\n";
  for (size_t i = 0; i < step_dev.size(); ++i) {
    os << step_labels[i] << "  " << step_h[i].str(6) << "  " << step_dev[i].str(8);
    if (i > 0) os << "  " << orders[i - 1].str(8);
    os << "\n";
  }
  os << "# extrapolated_dev " << extrapolated_dev.str(8) << "  (" << worst_quantity
     << ")\n";
  return os.str();
}

LimitReport limit_qR_to_dqH(const Rational& q, int N, const Rational& a,
                            const Rational& b, const std::vector<Rational>& ts) {
  LimitReport rep;
  rep.which = "qR-to-dqH";
  Sweep sw;
  F qf = to_float(q), af = to_float(a), bf = to_float(b);
  FSpec dst = make_fspec(Family::dqH, {af, bf, pow_int(qf, N)}, qf, N);
  for (const auto& t : ts) {
    F tf = to_float(t);
    sw.begin_step(tf);
    rep.step_labels.push_back("t=" + to_decimal(t, 4));
    FSpec src = make_fspec(Family::qR, {pow_int(qf, -N), af, tf, af * bf / qf}, qf, N);
    compare_systems(sw, src, dst, N, N, /*normalized=*/false);
  }
  sw.finish(rep);
  return rep;
}

std::vector<Rational> q_ladder(int k_lo, int k_hi) {
  std::vector<Rational> qs;
  for (int k = k_lo; k <= k_hi; ++k)
    qs.push_back(Rational(1) - Rational(1, pow_int(Integer(2), k)));
  return qs;
}

LimitReport limit_dqH_to_dH(const Rational& a, const Rational& b, int N,
                            const std::vector<Rational>& qs) {
  LimitReport rep;
  rep.which = "dqH-to-dH";
  Sweep sw;
  FSpec dst = make_fspec(Family::dH, {to_float(a), to_float(b), F(N)}, F(1), N);
  for (const auto& q : qs) {
    F qf = to_float(q);
    sw.begin_step(1 - qf);
    rep.step_labels.push_back("q=" + to_decimal(q, 6));
    FSpec src = make_fspec(
        Family::dqH, {pow(qf, to_float(a)), pow(qf, to_float(b)), pow_int(qf, N)}, qf, N);
    compare_systems(sw, src, dst, N, N, /*normalized=*/true);
  }
  sw.finish(rep);
  return rep;
}

LimitReport limit_qR_to_R(const std::vector<Rational>& lam_r, int N,
                          const std::vector<Rational>& qs) {
  LimitReport rep;
  rep.which = "qR-to-R";
  Sweep sw;
  std::vector<F> lamf;
  for (const auto& v : lam_r) lamf.push_back(to_float(v));
  FSpec dst = make_fspec(Family::R, lamf, F(1), N);
  for (const auto& q : qs) {
    F qf = to_float(q);
    sw.begin_step(1 - qf);
    rep.step_labels.push_back("q=" + to_decimal(q, 6));
    std::vector<F> lam;
    for (const auto& e : lamf) lam.push_back(pow(qf, e));
    FSpec src = make_fspec(Family::qR, lam, qf, N);
    compare_systems(sw, src, dst, N, N, /*normalized=*/true);
  }
  sw.finish(rep);
  return rep;
}

LimitReport limit_qR_to_lqJ(const Rational& q, const Rational& a, const Rational& b,
                            const std::vector<int>& Ns, const Rational& t_factor,
                            int window, int n_cap) {
  LimitReport rep;
  rep.which = "qR-to-lqJ";
  Sweep sw;
  F qf = to_float(q), af = to_float(a), bf = to_float(b);
  FSpec dst = make_fspec(Family::lqJ, {af, bf}, qf, std::nullopt);
  F hd = sinusoidal(dst, 1);
  for (int N : Ns) {
    F h = pow_int(qf, N);
    F tf = to_float(t_factor) * h;
    sw.begin_step(h);
    rep.step_labels.push_back("N=" + std::to_string(N));
    FSpec src = make_fspec(
        Family::qR,
        {pow_int(qf, -N), af * pow_int(qf, N + 1) / tf, bf * qf, 1 / tf}, qf, N);
    F hs = sinusoidal(src, 1);
    for (int x = 0; x <= window; ++x) {
      sw.add("B x=" + std::to_string(x), potential_B(src, x), potential_B(dst, x));
      sw.add("D x=" + std::to_string(x), potential_D(src, x), potential_D(dst, x));
      sw.add("eta x=" + std::to_string(x), sinusoidal(src, x) / hs,
             sinusoidal(dst, x) / hd);
    }
    for (int n = 0; n <= n_cap; ++n) {
      sw.add("E n=" + std::to_string(n), energy(src, n), energy(dst, n));
      for (int x = 0; x <= window; ++x)
        sw.add("P n=" + std::to_string(n) + " x=" + std::to_string(x),
               poly_value(src, n, x), poly_value(dst, n, x));
    }
  }
  sw.finish(rep);
  return rep;
}

}  // namespace xdop
