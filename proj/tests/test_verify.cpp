#include "doctest.h"
#include "xdop/io.hpp"
#include "xdop/verify.hpp"

using namespace xdop;
using R = Rational;
using Spec = FamilySpec<R>;

namespace {
Spec racah4() {
  Spec s;
  s.family = Family::R;
  s.lam = {R(-4), R(6), R(1, 2), R(1, 3)};
  s.grid_n = 4;
  return s;
}
SuiteOptions quick() {
  SuiteOptions opt;
  opt.ells = {1, 2};
  return opt;
}
}  // namespace

TEST_CASE("small Racah suite passes with zero residuals") {
  set_float_precision(256);
  auto rep = run_suite(racah4(), quick());
  for (const auto& c : rep.checks) {
    INFO(c.name, " ", c.witness);
    CHECK(c.pass);
    if (c.backend == std::string("exact")) CHECK(c.residual == "0");
  }
  CHECK(rep.all_pass());
}

TEST_CASE("ell=0 entry degenerates to original-system checks only") {
  SuiteOptions opt;
  opt.ells = {0};
  auto rep = run_suite(racah4(), opt);
  CHECK(rep.all_pass());
  for (const auto& c : rep.checks) {
    CHECK(c.name.find("deformed.") == std::string::npos);
    CHECK(c.name.find("intertwine.") == std::string::npos);
  }
}

TEST_CASE("inadmissible parameters are reported, not computed") {
  auto s = racah4();
  s.lam[2] = R(4);  // c<1+d fails
  auto rep = run_suite(s, quick());
  REQUIRE(rep.checks.size() == 1);
  CHECK(!rep.checks[0].pass);
  CHECK(rep.checks[0].witness.find("c<1+d fails") != std::string::npos);
}

TEST_CASE("each injected corruption trips at least one named check") {
  for (const char* fault : {"dn2", "dln2", "fhat", "bhat", "sl", "kappahat"}) {
    for (const R& scale : {R(2), R(1, 3), R(7, 5), R(-1)}) {
      auto opt = quick();
      opt.float_checks = false;
      opt.faults.target = fault;
      opt.faults.scale = scale;
      auto rep = run_suite(racah4(), opt);
      INFO("fault ", fault, " scale ", to_fraction_string(scale));
      CHECK(rep.failure_count() >= 1);
    }
  }
}

TEST_CASE("a corrupted fhat surfaces in the hat shift actions") {
  auto opt = quick();
  opt.float_checks = false;
  opt.faults.target = "fhat";
  auto rep = run_suite(racah4(), opt);
  bool backward_failed = false;
  for (const auto& c : rep.checks)
    if (c.name == "intertwine.hat_backward" && !c.pass &&
        c.witness.find("n=0") != std::string::npos)
      backward_failed = true;
  CHECK(backward_failed);
}

TEST_CASE("fault-free rerun is clean and deterministic") {
  auto opt = quick();
  auto rep1 = run_suite(racah4(), opt);
  auto rep2 = run_suite(racah4(), opt);
  CHECK(report_to_json(rep1).dump() == report_to_json(rep2).dump());
}

TEST_CASE("check filter restricts the suite") {
  auto opt = quick();
  opt.only = {"orthogonality", "eigen"};
  auto rep = run_suite(racah4(), opt);
  CHECK(rep.all_pass());
  bool saw_orth = false;
  for (const auto& c : rep.checks) {
    if (c.name == "validate.parameters") continue;
    bool match = c.name.find("orthogonality") != std::string::npos ||
                 c.name.find("eigen") != std::string::npos;
    CHECK(match);
    saw_orth |= c.name.find("orthogonality") != std::string::npos;
  }
  CHECK(saw_orth);
}

TEST_CASE("little q-Jacobi windowed suite passes with certified tails") {
  set_float_precision(256);
  Spec s;
  s.family = Family::lqJ;
  s.lam = {R(1, 2), R(1, 3)};
  s.q = R(1, 2);
  SuiteOptions opt;
  opt.ells = {1, 2};
  opt.n_cap = 3;
  opt.window = 12;
  opt.tail_tol = R(1, Integer("100000000000000000000"));  // 1e-20
  auto rep = run_suite(s, opt);
  for (const auto& c : rep.checks) {
    INFO(c.name, " ", c.witness, " residual=", c.residual);
    CHECK(c.pass);
  }
}

TEST_CASE("degenerate lqJ point: identities hold, only the degree claim fails") {
  // a = b makes xi_1 constant; every algebraic row still passes
  set_float_precision(256);
  Spec s;
  s.family = Family::lqJ;
  s.lam = {R(1, 2), R(1, 2)};
  s.q = R(1, 2);
  SuiteOptions opt;
  opt.ells = {1};
  opt.n_cap = 2;
  opt.window = 10;
  opt.tail_tol = R(1, Integer("10000000000"));  // 1e-10
  opt.float_checks = false;
  auto rep = run_suite(s, opt);
  for (const auto& c : rep.checks) {
    INFO(c.name, " ", c.witness);
    if (c.name == "deformed.normalization_degree")
      CHECK(!c.pass);
    else
      CHECK(c.pass);
  }
}

TEST_CASE("dual q-Hahn suite passes") {
  Spec s;
  s.family = Family::dqH;
  s.lam = {R(1, 2), R(1, 4), R(1, 64)};
  s.q = R(1, 2);
  s.grid_n = 6;
  SuiteOptions opt;
  opt.ells = {1, 2};
  auto rep = run_suite(s, opt);
  for (const auto& c : rep.checks) {
    INFO(c.name, " ", c.witness);
    CHECK(c.pass);
  }
}
