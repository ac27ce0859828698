#pragma once

// Float-backend limit sweeps between families. Each sweep compares the mapped
// source system against the directly built target over a shrinking parameter,
// reports per-step maximum relative deviations, empirical convergence orders,
// and the Neville-extrapolated (iterated Richardson, first order onward)
// deviation at the limit point.

#include <string>
#include <vector>

#include "xdop/family.hpp"
#include "xdop/scalar.hpp"

namespace xdop {

struct LimitReport {
  std::string which;
  std::vector<std::string> step_labels;
  std::vector<MpFloat> step_h;          // the vanishing parameter per step
  std::vector<MpFloat> step_dev;        // max relative deviation per step
  std::vector<MpFloat> orders;          // empirical order between consecutive steps
  MpFloat extrapolated_dev = MpFloat(0);  // max per-quantity relative extrapolated dev
  std::string worst_quantity;

  bool monotone_decreasing_last3() const;
  std::string text_table() const;  // plot-ready columns
};

// qR with q^lambda = (q^-N, a, t, a b q^-1) against dqH(a, b), t -> 0.
LimitReport limit_qR_to_dqH(const Rational& q, int N, const Rational& a,
                            const Rational& b, const std::vector<Rational>& ts);

// q values for the q -> 1 ladder q = 1 - 2^-k
std::vector<Rational> q_ladder(int k_lo, int k_hi);

// dqH with q^lambda = (q^a, q^b, q^N) against dH(a, b, N) as q -> 1.
// E/eta-normalized comparison.
LimitReport limit_dqH_to_dH(const Rational& a, const Rational& b, int N,
                            const std::vector<Rational>& qs);

// qR with q^lambda = q^(lambda^R) against R(lambda) as q -> 1.
LimitReport limit_qR_to_R(const std::vector<Rational>& lam_r, int N,
                          const std::vector<Rational>& qs);

// qR with q^lambda = (q^-N, a q^{N+1}/t, bq, 1/t), t = t_factor q^N, against
// lqJ(a, b) on a fixed window; deviations shrink as N grows.
LimitReport limit_qR_to_lqJ(const Rational& q, const Rational& a, const Rational& b,
                            const std::vector<int>& Ns, const Rational& t_factor,
                            int window, int n_cap);

}  // namespace xdop
