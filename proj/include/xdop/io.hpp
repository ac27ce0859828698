#pragma once

// JSON / CSV serialization. Exact rationals travel as "num/den" strings so a
// round trip loses nothing; CSV renders decimals at a caller-chosen digit
// count.

#include <fstream>

#include "json.hpp"
#include "xdop/operators.hpp"
#include "xdop/verify.hpp"

namespace xdop {

using nlohmann::json;

inline json spec_to_json(const FamilySpec<Rational>& spec) {
  json j;
  j["family"] = family_name(spec.family);
  j["lambda"] = json::array();
  for (const auto& v : spec.lam) j["lambda"].push_back(to_fraction_string(v));
  if (is_q_family(spec.family)) j["q"] = to_fraction_string(spec.q);
  if (spec.grid_n) j["N"] = *spec.grid_n;
  return j;
}

inline json poly_to_json(const EtaPolynomial<Rational>& p,
                         const std::vector<Rational>& grid_values) {
  json j;
  j["basis_shift"] = p.basis_shift;
  j["eta_coeffs"] = json::array();
  for (const auto& c : p.coeffs) j["eta_coeffs"].push_back(to_fraction_string(c));
  j["grid_values"] = json::array();
  for (const auto& v : grid_values) j["grid_values"].push_back(to_fraction_string(v));
  return j;
}

inline Poly<Rational> coeffs_from_json(const json& j) {
  Poly<Rational> c;
  for (const auto& s : j) c.push_back(parse_rational(s.get<std::string>()));
  return c;
}

inline json matrix_to_json(const std::string& label, const DenseMatrix<Rational>& m) {
  json j;
  j["label"] = label;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) r.push_back(to_fraction_string(m(i, k)));
    rows.push_back(std::move(r));
  }
  j["entries"] = std::move(rows);
  return j;
}

inline json report_to_json(const VerificationReport& rep) {
  json j;
  j["family"] = rep.family;
  j["lambda"] = rep.lambda;
  if (!rep.q.empty()) j["q"] = rep.q;
  if (rep.grid_n) j["N"] = *rep.grid_n;
  j["ells"] = rep.ells;
  json checks = json::array();
  for (const auto& c : rep.checks) {
    checks.push_back({{"name", c.name},
                      {"identity", c.identity},
                      {"backend", c.backend},
                      {"status", c.pass ? "pass" : "fail"},
                      {"residual", c.residual},
                      {"witness", c.witness}});
  }
  j["checks"] = std::move(checks);
  j["all_pass"] = rep.all_pass();
  j["failures"] = rep.failure_count();
  return j;
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace xdop
