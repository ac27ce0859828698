#pragma once

// The identity suite: every closed-form claim of the five systems, run to
// residual exactly 0 on the rational backend (sqrt-laden relations are
// covered by their squared transcriptions plus float spot checks). Failures
// are report rows, not exceptions; fault injection corrupts one named
// constant so the suite's sensitivity is itself testable.

#include <optional>
#include <string>
#include <vector>

#include "xdop/family.hpp"
#include "xdop/scalar.hpp"

namespace xdop {

struct Faults {
  std::string target;           // one of: dn2 dln2 fhat bhat sl kappahat (empty = none)
  Rational scale = Rational(2);  // any nonzero rational != 1
  bool is(const char* t) const { return target == t; }
};

struct CheckRow {
  std::string name;      // stable key, e.g. "deformed.orthogonality"
  std::string identity;  // the identity verified, as formula text
  std::string backend;   // "exact" or "float:<bits>"
  bool pass = false;
  std::string residual;  // "0" on exact pass; decimal or certified bound otherwise
  std::string witness;   // first failing location, e.g. "ell=1 n=2 x=3"
};

struct VerificationReport {
  std::string family;
  std::vector<std::string> lambda;
  std::string q;  // empty if absent
  std::optional<int> grid_n;
  std::vector<int> ells;
  std::vector<CheckRow> checks;

  bool all_pass() const;
  int failure_count() const;
  std::string text_summary() const;
};

struct SuiteOptions {
  std::vector<int> ells{1, 2, 3};
  int n_cap = -1;    // cap on polynomial index for infinite families (-1: window-derived)
  int window = 24;   // identity window for infinite families
  Rational tail_tol = Rational(1, 1);  // certified sum-tail tolerance (lqJ); set before use
  std::vector<std::string> only;       // run only checks whose name starts with an entry
  Faults faults;
  bool force = false;        // run even when validate_parameters reports violations
  bool float_checks = true;  // include the float-backend sanity rows
};

VerificationReport run_suite(const FamilySpec<Rational>& spec, const SuiteOptions& opt);

}  // namespace xdop
