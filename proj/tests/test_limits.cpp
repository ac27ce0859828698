#include "doctest.h"
#include "xdop/limits.hpp"

using namespace xdop;
using R = Rational;

TEST_CASE("qR to dqH sweep converges at first order") {
  set_float_precision(256);
  auto rep = limit_qR_to_dqH(R(1, 2), 4, R(1, 2), R(1, 4),
                             {R(1, 100), R(1, 10000), R(1, 1000000)});
  REQUIRE(rep.step_dev.size() == 3);
  CHECK(rep.monotone_decreasing_last3());
  // deviations drop by roughly a factor 100 per step
  CHECK(rep.step_dev[0] / rep.step_dev[1] > 50);
  CHECK(rep.step_dev[1] / rep.step_dev[2] > 50);
  for (const auto& o : rep.orders) CHECK(o >= 1);
  CHECK(rep.extrapolated_dev < MpFloat("1e-8"));
}

TEST_CASE("dqH to dH sweep shrinks along q = 1 - 2^-k") {
  set_float_precision(256);
  auto rep = limit_dqH_to_dH(R(1), R(2), 6, q_ladder(4, 7));
  REQUIRE(rep.step_dev.size() == 4);
  CHECK(rep.monotone_decreasing_last3());
  CHECK(rep.step_dev.back() < rep.step_dev.front());
}

TEST_CASE("qR to lqJ window deviations shrink with N") {
  set_float_precision(256);
  auto rep = limit_qR_to_lqJ(R(1, 2), R(1, 2), R(1, 2), {6, 8, 10}, R(1, 1000), 4, 3);
  REQUIRE(rep.step_dev.size() == 3);
  CHECK(rep.monotone_decreasing_last3());
}
