#include "doctest.h"
#include "xdop/polynomial.hpp"

using namespace xdop;
using R = Rational;

TEST_CASE("interpolation reproduces exact data") {
  // f(y) = 2 - y/3 + 5y^3 at distinct rational nodes
  Poly<R> f{R(2), R(-1, 3), R(0), R(5)};
  std::vector<R> nodes{R(0), R(1, 2), R(3), R(-2)};
  std::vector<R> values;
  for (const auto& y : nodes) values.push_back(poly_eval(f, y));
  auto c = interpolate(nodes, values);
  REQUIRE(c.size() == f.size());
  for (size_t i = 0; i < f.size(); ++i) CHECK(c[i] == f[i]);
  CHECK(poly_eval(c, R(7, 5)) == poly_eval(f, R(7, 5)));
}

TEST_CASE("coincident nodes are rejected") {
  std::vector<R> nodes{R(1), R(1)};
  std::vector<R> values{R(0), R(1)};
  CHECK_THROWS_AS((void)interpolate(nodes, values), InterpolationSingular);
}

TEST_CASE("gcd and derivative") {
  // p = (y-1)^2 (y+2) = y^3 - 3y + 2
  Poly<R> p{R(2), R(-3), R(0), R(1)};
  auto g = poly_gcd(p, poly_derivative(p));
  REQUIRE(poly_degree(g) == 1);  // common factor (y-1)
  CHECK(poly_eval(g, R(1)) == 0);
}

TEST_CASE("Sturm counting on a cubic with known roots") {
  // (y-1)(y-2)(y-3) = y^3 - 6y^2 + 11y - 6
  Poly<R> p{R(-6), R(11), R(-6), R(1)};
  CHECK(sturm_count(p, R(0), R(4)) == 3);
  CHECK(sturm_count(p, R(0), R(5, 2)) == 2);
  CHECK(sturm_count(p, R(3, 2), R(5, 2)) == 1);
  CHECK(sturm_count(p, R(4), R(10)) == 0);
  // half-open: root at the right endpoint counts, at the left it does not
  CHECK(sturm_count(p, R(0), R(3)) == 3);
  CHECK(sturm_count(p, R(1), R(3)) == 2);
}

TEST_CASE("Sturm counts distinct roots of a non-squarefree polynomial") {
  // (y-1)^2 (y-3)
  Poly<R> p{R(-3), R(7), R(-5), R(1)};
  CHECK(sturm_count(p, R(0), R(4)) == 2);
  CHECK(sturm_count(p, R(2), R(4)) == 1);
}
