#pragma once

// The five families and their parameter bookkeeping: shift vectors, twist
// maps, kappa, admissible ranges. q-family parameters are stored in
// exponentiated form (a = q^{lambda_1} etc.), so shifts act multiplicatively
// and every closed form can be evaluated as written.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "xdop/scalar.hpp"

namespace xdop {

enum class Family { R, qR, dH, dqH, lqJ };

inline const char* family_name(Family f) {
  switch (f) {
    case Family::R: return "R";
    case Family::qR: return "qR";
    case Family::dH: return "dH";
    case Family::dqH: return "dqH";
    case Family::lqJ: return "lqJ";
  }
  return "?";
}

Family family_from_name(const std::string& s);

inline bool is_q_family(Family f) { return f != Family::R && f != Family::dH; }
inline bool is_finite_family(Family f) { return f != Family::lqJ; }

inline size_t family_param_count(Family f) {
  switch (f) {
    case Family::R:
    case Family::qR: return 4;
    case Family::dH:
    case Family::dqH: return 3;
    case Family::lqJ: return 2;
  }
  return 0;
}

// Parameter shift vectors (exponent convention).
inline std::vector<int> delta_of(Family f) {
  switch (f) {
    case Family::R:
    case Family::qR: return {1, 1, 1, 1};
    case Family::dH:
    case Family::dqH: return {1, 0, -1};
    case Family::lqJ: return {1, 1};
  }
  return {};
}

inline std::vector<int> delta_tilde_of(Family f) {
  switch (f) {
    case Family::R:
    case Family::qR: return {0, 0, -1, -1};
    case Family::dH:
    case Family::dqH: return {0, -1, 0};
    case Family::lqJ: return {1, -1};
  }
  return {};
}

template <class S>
struct FamilySpec {
  Family family = Family::R;
  std::vector<S> lam;       // length 4 / 3 / 2; exponentiated for q-families
  S q = S(1);               // q-families only
  std::optional<int> grid_n;  // N for finite systems; nullopt for lqJ / twisted specs

  S kappa() const {
    return is_q_family(family) ? S(1) / q : S(1);
  }
  int n_value() const {
    if (!grid_n) throw std::logic_error("grid size requested for an infinite/twisted spec");
    return *grid_n;
  }
};

// lambda + m * shift; multiplicative on exponentiated q-parameters. The grid
// size follows the N-carrying slot (a = -N resp. q^{-N} for R/qR, lambda_3 = N
// for dH/dqH).
template <class S>
FamilySpec<S> shift_lambda(const FamilySpec<S>& spec, int m, const std::vector<int>& shift) {
  FamilySpec<S> out = spec;
  for (size_t i = 0; i < out.lam.size(); ++i) {
    if (is_q_family(spec.family))
      out.lam[i] *= pow_int(spec.q, static_cast<long>(m) * shift[i]);
    else
      out.lam[i] += S(m * shift[i]);
  }
  if (spec.grid_n && is_finite_family(spec.family)) {
    int slot = (spec.family == Family::dH || spec.family == Family::dqH) ? 2 : 0;
    out.grid_n = *spec.grid_n + (slot == 2 ? m * shift[slot] : -m * shift[slot]);
  }
  return out;
}

template <class S>
FamilySpec<S> shift_delta(const FamilySpec<S>& spec, int m = 1) {
  return shift_lambda(spec, m, delta_of(spec.family));
}

template <class S>
FamilySpec<S> shift_delta_tilde(const FamilySpec<S>& spec, int m = 1) {
  return shift_lambda(spec, m, delta_tilde_of(spec.family));
}

// The twist map creating the deforming polynomial's parameters. The result is
// a formula-evaluation spec only, so its grid size is cleared.
template <class S>
FamilySpec<S> twist(const FamilySpec<S>& spec) {
  FamilySpec<S> out = spec;
  out.grid_n = std::nullopt;
  const auto& l = spec.lam;
  switch (spec.family) {
    case Family::R:
      out.lam = {l[3] - l[0], l[3] - l[1], l[2], l[3]};
      break;
    case Family::qR:
      out.lam = {l[3] / l[0], l[3] / l[1], l[2], l[3]};
      break;
    case Family::dH:
      out.lam = {l[0] + l[1] + l[2] - S(1), S(1) - l[2], S(1) - l[1]};
      break;
    case Family::dqH:
      out.lam = {l[0] * l[1] * l[2] / spec.q, spec.q / l[2], spec.q / l[1]};
      break;
    case Family::lqJ:
      out.lam = {S(1) / (l[0] * spec.q * spec.q), l[1]};
      break;
  }
  return out;
}

struct DeformationIndex {
  int ell = 0;
  std::optional<int> x_max_ell;  // N - ell for finite families
};

template <class S>
DeformationIndex deformation_index(const FamilySpec<S>& spec, int ell) {
  DeformationIndex d;
  d.ell = ell;
  if (spec.grid_n) d.x_max_ell = *spec.grid_n - ell;
  return d;
}

struct Violation {
  std::string clause;
};

struct ValidationResult {
  std::vector<Violation> violations;
  bool admissible() const { return violations.empty(); }
};

// Published parameter ranges, one clause at a time. dH/dqH use the deformed
// restrictions (b > 1 resp. b < q).
template <class S>
ValidationResult validate_parameters(const FamilySpec<S>& spec) {
  ValidationResult res;
  auto need = [&res](bool ok, const std::string& clause) {
    if (!ok) res.violations.push_back({clause});
  };
  const auto& l = spec.lam;
  if (l.size() != family_param_count(spec.family)) {
    res.violations.push_back({"parameter count mismatch"});
    return res;
  }
  if (is_q_family(spec.family)) need(spec.q > 0 && spec.q < 1, "0<q<1 fails");
  switch (spec.family) {
    case Family::R: {
      if (spec.grid_n) need(l[0] == S(-*spec.grid_n), "a=-N fails");
      need(l[0] + l[1] > l[3], "a+b>d fails");
      need(l[3] > 0, "d>0 fails");
      need(l[2] > 0, "0<c fails");
      need(l[2] < S(1) + l[3], "c<1+d fails");
      break;
    }
    case Family::qR: {
      if (spec.grid_n) need(l[0] == pow_int(spec.q, -*spec.grid_n), "a=q^-N fails");
      need(l[0] * l[1] > 0, "0<ab fails");
      need(l[0] * l[1] < l[3], "ab<d fails");
      need(l[3] < 1, "d<1 fails");
      need(spec.q * l[3] < l[2], "qd<c fails");
      need(l[2] < 1, "c<1 fails");
      break;
    }
    case Family::dH:
      need(l[0] > 0, "a>0 fails");
      need(l[1] > 1, "b>1 fails");
      break;
    case Family::dqH:
      need(l[0] > 0 && l[0] < 1, "0<a<1 fails");
      need(l[1] > 0, "0<b fails");
      need(l[1] < spec.q, "b<q fails");
      break;
    case Family::lqJ:
      need(l[0] > 0, "0<a fails");
      need(l[0] * spec.q < 1, "a<1/q fails");
      need(l[1] > 0, "0<b fails");
      need(l[1] * spec.q < 1, "b<1/q fails");
      break;
  }
  return res;
}

// Parameter choices where a closed-form denominator degenerates to 0/0 even
// though the range clauses hold. Within the published ranges these are the
// only collisions; every other denominator is bounded away from zero.
template <class S>
ValidationResult denominator_collisions(const FamilySpec<S>& spec) {
  ValidationResult res;
  const auto& l = spec.lam;
  switch (spec.family) {
    case Family::R:
      if (l[3] == 1) res.violations.push_back({"d=1 degenerates D(0)"});
      break;
    case Family::qR:
      if (l[3] == spec.q) res.violations.push_back({"d=q degenerates D(0)"});
      break;
    case Family::dH:
      if (l[0] + l[1] == 2) res.violations.push_back({"a+b=2 degenerates D(0)"});
      break;
    case Family::dqH:
      if (l[0] * l[1] == spec.q * spec.q)
        res.violations.push_back({"ab=q^2 degenerates D(0)"});
      break;
    case Family::lqJ:
      break;
  }
  return res;
}

}  // namespace xdop
