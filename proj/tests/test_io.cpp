#include "doctest.h"
#include "xdop/io.hpp"

using namespace xdop;
using R = Rational;

TEST_CASE("rational parsing") {
  CHECK(parse_rational("-8") == R(-8));
  CHECK(parse_rational("3/2") == R(3, 2));
  CHECK(parse_rational("-123/456") == R(-41, 152));
  CHECK(parse_rational("0.25") == R(1, 4));
  CHECK(parse_rational("1e-2") == R(1, 100));
  CHECK(parse_rational("2.5e3") == R(2500));
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational(""));
}

TEST_CASE("fraction strings are canonical") {
  CHECK(to_fraction_string(R(6, 4)) == "3/2");
  CHECK(to_fraction_string(R(-5)) == "-5");
  CHECK(parse_rational(to_fraction_string(R(123456789, 987654321))) ==
        R(123456789, 987654321));
}

TEST_CASE("eta polynomial JSON round-trips exactly") {
  FamilySpec<R> s;
  s.family = Family::R;
  s.lam = {R(-8), R(10), R(2), R(3, 2)};
  s.grid_n = 8;
  auto p = polynomial_P(s, 3);
  std::vector<R> grid;
  for (int x = 0; x <= 8; ++x) grid.push_back(poly_eval(p.coeffs, sinusoidal(s, x)));
  json j = poly_to_json(p, grid);
  auto coeffs = coeffs_from_json(j["eta_coeffs"]);
  REQUIRE(coeffs.size() == p.coeffs.size());
  for (int x = 0; x <= 8; ++x) {
    R v = poly_eval(coeffs, sinusoidal(s, x));
    CHECK(to_fraction_string(v) == j["grid_values"][x].get<std::string>());
  }
}

TEST_CASE("matrix JSON carries exact entries") {
  DenseMatrix<R> m(2, 2);
  m << R(1, 3), R(-2), R(0), R(7, 5);
  json j = matrix_to_json("test", m);
  CHECK(j["rows"] == 2);
  CHECK(j["entries"][0][0] == "1/3");
  CHECK(j["entries"][1][1] == "7/5");
}

TEST_CASE("decimal rendering honors the digit count") {
  set_float_precision(256);
  std::string s = to_decimal(R(1, 3), 30);
  CHECK(s.substr(0, 10) == "0.33333333");
  CHECK(s.size() >= 30);
}
