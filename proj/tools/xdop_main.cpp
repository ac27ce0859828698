// Command-line front end: construct polynomial/weight tables, run the
// verification suite, count zeros, and drive the limit sweeps.
//
// Exit codes: 0 all checks pass, 1 at least one check failed, 2 usage error.

#include <iostream>
#include <set>

#include "CLI11.hpp"
#include "xdop/io.hpp"
#include "xdop/limits.hpp"
#include "xdop/tails.hpp"
#include "xdop/verify.hpp"

namespace {

using namespace xdop;

std::vector<Rational> parse_list(const std::string& csv) {
  std::vector<Rational> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
  return out;
}

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

// "a..b" or a single integer
std::pair<int, int> parse_range(const std::string& s) {
  auto pos = s.find("..");
  if (pos == std::string::npos) {
    int v = std::stoi(s);
    return {v, v};
  }
  return {std::stoi(s.substr(0, pos)), std::stoi(s.substr(pos + 2))};
}

struct SpecArgs {
  std::string family = "R";
  std::string params;
  int N = 0;
  std::string q;

  FamilySpec<Rational> build() const {
    FamilySpec<Rational> spec;
    spec.family = family_from_name(family);
    auto values = parse_list(params);
    if (!q.empty()) spec.q = parse_rational(q);
    switch (spec.family) {
      case Family::R:
      case Family::qR:
        if (values.size() != 4)
          throw CLI::ValidationError("--params", "expected 4 values a,b,c,d");
        spec.lam = values;
        spec.grid_n = N;
        break;
      case Family::dH:
        if (values.size() != 2)
          throw CLI::ValidationError("--params", "expected 2 values a,b");
        spec.lam = {values[0], values[1], Rational(N)};
        spec.grid_n = N;
        break;
      case Family::dqH:
        if (values.size() != 2)
          throw CLI::ValidationError("--params", "expected 2 values a,b");
        spec.lam = {values[0], values[1], pow_int(spec.q, N)};
        spec.grid_n = N;
        break;
      case Family::lqJ:
        if (values.size() != 2)
          throw CLI::ValidationError("--params", "expected 2 values a,b");
        spec.lam = values;
        break;
    }
    if (is_q_family(spec.family) && q.empty())
      throw CLI::ValidationError("--q", "q is required for q-families");
    return spec;
  }
};

void add_spec_options(CLI::App* cmd, SpecArgs& a) {
  cmd->add_option("--family", a.family, "family: R, qR, dH, dqH, lqJ")->required();
  cmd->add_option("--params", a.params,
                  "parameters as exact rationals p/q (R/qR: a,b,c,d; others: a,b)")
      ->required();
  cmd->add_option("--N", a.N, "grid size for finite families");
  cmd->add_option("--q", a.q, "base q (rational in (0,1))");
}

int exit_status_for(const VerificationReport& rep) { return rep.all_pass() ? 0 : 1; }

// Window and tail bound used by exact table/weight output on lqJ.
int table_window(const FamilySpec<Rational>& spec, int ell, int n_top,
                 const Rational& tol, Rational& bound) {
  auto target = ell > 0 ? shift_delta(spec, ell) : spec;
  Rational majorant(1);
  for (int n = 0; n <= n_top; ++n) {
    Poly<Rational> coeffs;
    if (ell > 0)
      coeffs = exceptional_P(spec, ell, n, ell + n).coeffs;
    else
      coeffs = polynomial_P(spec, n).coeffs;
    Rational c = coeff_abs_sum(coeffs);
    if (c * c > majorant) majorant = c * c;
  }
  int X = certified_window(target, majorant, tol, 8);
  weight_tail_bound(target, X, bound);
  bound *= majorant;
  return X;
}

int cmd_table(const SpecArgs& sargs, const std::string& ells_csv, const std::string& nrange,
              const std::string& format, const std::string& out, int digits,
              const std::string& trunc_tol) {
  auto spec = sargs.build();
  auto validation = validate_parameters(spec);
  if (!validation.admissible()) {
    std::cerr << "parameter range violations:\n";
    for (const auto& v : validation.violations) std::cerr << "  " << v.clause << "\n";
    return 2;
  }
  auto [n_lo, n_hi] = parse_range(nrange);
  std::vector<int> ells = ells_csv.empty() ? std::vector<int>{0} : parse_int_list(ells_csv);

  json j = spec_to_json(spec);
  j["polynomials"] = json::array();
  std::ostringstream csv;
  csv << "ell,n,kind,index,value\n";
  const bool finite = is_finite_family(spec.family);
  const Rational tol = trunc_tol.empty() ? Rational(1, 1000000) : parse_rational(trunc_tol);

  for (int ell : ells) {
    int x_top;
    Rational tail(0);
    if (finite)
      x_top = *deformation_index(spec, ell).x_max_ell;
    else
      x_top = table_window(spec, ell, n_hi, tol, tail);
    if (!finite) j["tail_bound"] = to_decimal(tail, 3);
    for (int n = n_lo; n <= n_hi; ++n) {
      if (finite && n > x_top) continue;
      EtaPolynomial<Rational> p =
          ell > 0 ? exceptional_P(spec, ell, n, finite ? x_top : ell + n)
                  : polynomial_P(spec, n);
      std::vector<Rational> grid;
      auto basis = ell > 0 ? shift_delta(spec, ell) : spec;
      for (int x = 0; x <= x_top; ++x) grid.push_back(poly_eval(p.coeffs, sinusoidal(basis, x)));
      json pj = poly_to_json(p, grid);
      pj["ell"] = ell;
      pj["n"] = n;
      j["polynomials"].push_back(pj);
      for (size_t k = 0; k < p.coeffs.size(); ++k)
        csv << ell << "," << n << ",coeff," << k << "," << to_decimal(p.coeffs[k], digits)
            << "\n";
      for (size_t x = 0; x < grid.size(); ++x)
        csv << ell << "," << n << ",value," << x << "," << to_decimal(grid[x], digits)
            << "\n";
    }
  }

  std::string text = format == "csv" ? csv.str() : j.dump(2) + "\n";
  if (format == "text") text = j.dump(2) + "\n";
  if (out.empty())
    std::cout << text;
  else
    write_text_file(out, text);
  return 0;
}

int cmd_weights(const SpecArgs& sargs, const std::string& ells_csv,
                const std::string& format, const std::string& out, int digits,
                const std::string& trunc_tol) {
  auto spec = sargs.build();
  auto validation = validate_parameters(spec);
  if (!validation.admissible()) {
    std::cerr << "parameter range violations:\n";
    for (const auto& v : validation.violations) std::cerr << "  " << v.clause << "\n";
    return 2;
  }
  const bool finite = is_finite_family(spec.family);
  const Rational tol = trunc_tol.empty() ? Rational(1, 1000000) : parse_rational(trunc_tol);
  json j = spec_to_json(spec);
  std::ostringstream csv;
  csv << "ell,kind,index,value\n";

  auto emit = [&](int ell, const std::string& kind, int idx, const Rational& v) {
    csv << ell << "," << kind << "," << idx << "," << to_decimal(v, digits) << "\n";
  };

  int n_top = finite ? spec.n_value() : 8;
  Rational tail(0);
  int x_top = finite ? spec.n_value() : table_window(spec, 0, n_top, tol, tail);
  json w0 = json::array(), d0 = json::array();
  for (int x = 0; x <= x_top; ++x) {
    Rational v = weight_phi0_sq_product(spec, x);
    w0.push_back(to_fraction_string(v));
    emit(0, "phi0_sq", x, v);
  }
  for (int n = 0; n <= n_top; ++n) {
    auto split = norm_dn_sq_split(spec, n);
    if (split.has_infinite) {
      MpFloat v = norm_value(split, spec.q);
      d0.push_back(to_decimal(v, digits));
      csv << 0 << ",dn_sq," << n << "," << to_decimal(v, digits) << "\n";
    } else {
      d0.push_back(to_fraction_string(split.rational_part));
      emit(0, "dn_sq", n, split.rational_part);
    }
  }
  j["phi0_sq"] = w0;
  j["dn_sq"] = d0;
  if (!finite) j["tail_bound"] = to_decimal(tail, 3);

  if (!ells_csv.empty()) {
    j["deformed"] = json::array();
    for (int ell : parse_int_list(ells_csv)) {
      json dj;
      dj["ell"] = ell;
      int xl = finite ? spec.n_value() - ell : x_top;
      int nl = finite ? spec.n_value() - ell : n_top;
      json psij = json::array(), dlnj = json::array();
      for (int x = 0; x <= xl; ++x) {
        Rational v = psi_sq(spec, ell, x);
        psij.push_back(to_fraction_string(v));
        emit(ell, "psi_sq", x, v);
      }
      for (int n = 0; n <= nl; ++n) {
        auto split = deformed_norm_split(spec, ell, n);
        if (split.has_infinite) {
          MpFloat v = norm_value(split, spec.q);
          dlnj.push_back(to_decimal(v, digits));
          csv << ell << ",dln_sq," << n << "," << to_decimal(v, digits) << "\n";
        } else {
          dlnj.push_back(to_fraction_string(split.rational_part));
          emit(ell, "dln_sq", n, split.rational_part);
        }
      }
      dj["psi_sq"] = psij;
      dj["dln_sq"] = dlnj;
      j["deformed"].push_back(dj);
    }
  }

  std::string text = format == "csv" ? csv.str() : j.dump(2) + "\n";
  if (out.empty())
    std::cout << text;
  else
    write_text_file(out, text);
  return 0;
}

int cmd_verify(const SpecArgs& sargs, SuiteOptions opt, const std::string& report_path,
               bool quiet, const std::string& matrices_path) {
  auto spec = sargs.build();
  auto rep = run_suite(spec, opt);
  if (!report_path.empty()) write_text_file(report_path, report_to_json(rep).dump(2) + "\n");
  if (!matrices_path.empty()) {
    json out = spec_to_json(spec);
    out["matrices"] = json::array();
    const bool finite = is_finite_family(spec.family);
    int blk = (finite ? spec.n_value() : opt.window) + 1;
    int pad = finite ? 0 : 2;
    out["matrices"].push_back(matrix_to_json("Htilde", op_h_tilde(spec, blk + pad)));
    out["matrices"].push_back(
        matrix_to_json("F", op_forward(spec, blk - 1 + pad, blk + pad)));
    out["matrices"].push_back(
        matrix_to_json("Bop", op_backward(spec, blk + pad, blk - 1 + pad)));
    for (int ell : opt.ells) {
      if (ell <= 0 || (finite && ell >= spec.n_value())) continue;
      int xl = finite ? spec.n_value() - ell : opt.window;
      auto t = build_deformed_tables(spec, ell, finite ? xl : xl + 3, 0);
      std::string suffix = "_ell" + std::to_string(ell);
      out["matrices"].push_back(
          matrix_to_json("Htilde" + suffix, op_h_tilde_deformed(t, xl + 1 + pad)));
      out["matrices"].push_back(
          matrix_to_json("Fhat" + suffix, op_fhat(t, xl + 1 + pad)));
      out["matrices"].push_back(
          matrix_to_json("Bhat" + suffix, op_bhat(t, xl + 1 + pad)));
    }
    write_text_file(matrices_path, out.dump(2) + "\n");
  }
  if (!quiet) std::cout << rep.text_summary();
  return exit_status_for(rep);
}

int cmd_zeros(const SpecArgs& sargs, const std::string& ells_csv, const std::string& nrange,
              const std::string& out) {
  auto spec = sargs.build();
  auto [n_lo, n_hi] = parse_range(nrange);
  const bool finite = is_finite_family(spec.family);
  std::ostringstream os;
  os << "ell,n,degree,zeros_in_interval,interval_top\n";
  bool ok = true;
  for (int ell : parse_int_list(ells_csv.empty() ? "1" : ells_csv)) {
    auto basis = ell > 0 ? shift_delta(spec, ell) : spec;
    auto idx = deformation_index(spec, ell);
    int xl = idx.x_max_ell.value_or(0);
    Rational hi = finite ? sinusoidal(basis, xl) : Rational(1);
    for (int n = n_lo; n <= n_hi; ++n) {
      if (finite && n > xl) continue;
      Poly<Rational> coeffs;
      if (ell > 0)
        coeffs = exceptional_P(spec, ell, n, ell + n).coeffs;
      else
        coeffs = polynomial_P(spec, n).coeffs;
      int cnt = sturm_count(coeffs, Rational(0), hi);
      if (poly_eval(coeffs, hi) == 0) --cnt;
      os << ell << "," << n << "," << poly_degree(coeffs) << "," << cnt << ","
         << to_decimal(hi, 8) << "\n";
      if (cnt != n) ok = false;
    }
  }
  if (out.empty())
    std::cout << os.str();
  else
    write_text_file(out, os.str());
  return ok ? 0 : 1;
}

int cmd_limits(const std::string& which, const std::string& q, const std::string& params,
               int N, const std::string& t_csv, const std::string& k_range,
               const std::string& q_seq, const std::string& n_list,
               const std::string& t_factor, const std::string& out) {
  LimitReport rep;
  auto values = parse_list(params);
  auto q_nodes = [&]() {
    if (!q_seq.empty()) return parse_list(q_seq);
    auto [klo, khi] = parse_range(k_range.empty() ? "4..10" : k_range);
    return q_ladder(klo, khi);
  };
  if (which == "qR-to-dqH") {
    if (values.size() != 2) throw CLI::ValidationError("--params", "expected a,b");
    rep = limit_qR_to_dqH(parse_rational(q), N, values[0], values[1],
                          parse_list(t_csv.empty() ? "1e-2,1e-4,1e-6" : t_csv));
  } else if (which == "dqH-to-dH") {
    if (values.size() != 2) throw CLI::ValidationError("--params", "expected a,b");
    rep = limit_dqH_to_dH(values[0], values[1], N, q_nodes());
  } else if (which == "qR-to-R") {
    if (values.size() != 4) throw CLI::ValidationError("--params", "expected a,b,c,d");
    rep = limit_qR_to_R(values, N, q_nodes());
  } else if (which == "qR-to-lqJ") {
    if (values.size() != 2) throw CLI::ValidationError("--params", "expected a,b");
    auto Ns = parse_int_list(n_list.empty() ? "8,12,16" : n_list);
    rep = limit_qR_to_lqJ(parse_rational(q), values[0], values[1], Ns,
                          parse_rational(t_factor.empty() ? "1e-3" : t_factor), 4, 4);
  } else {
    throw CLI::ValidationError("--which",
                               "expected qR-to-dqH, dqH-to-dH, qR-to-R or qR-to-lqJ");
  }
  std::string text = rep.text_table();
  if (out.empty())
    std::cout << text;
  else
    write_text_file(out, text);
  return rep.monotone_decreasing_last3() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact construction and verification of the ordinary and exceptional "
               "(q)-Racah, dual (q)-Hahn and little q-Jacobi systems"};
  app.require_subcommand(1);

  int precision = 256;
  if (const char* env = std::getenv("XDOP_PRECISION")) precision = std::atoi(env);
  app.add_option("--precision", precision, "float backend precision in bits (>= 128)");

  SpecArgs sargs;
  std::string ells_csv, nrange = "0..4", format = "json", out, trunc_tol, report_path;
  std::string checks_csv, fault, fault_scale, matrices_path;
  int digits = 30;
  bool force = false, quiet = false, no_float = false;
  std::string which, t_csv, k_range, q_seq, n_list, t_factor;
  std::string window_str = "24", tail_tol_str = "1e-30";

  auto* table = app.add_subcommand("table", "eta-basis coefficients and grid values");
  add_spec_options(table, sargs);
  table->add_option("--ell", ells_csv, "deformation indices (0 = original)");
  table->add_option("--n", nrange, "polynomial index range, e.g. 0..6");
  table->add_option("--format", format, "json, csv or text");
  table->add_option("--out", out, "output path (stdout if omitted)");
  table->add_option("--digits", digits, "decimal digits for csv rendering");
  table->add_option("--trunc-tol", trunc_tol, "certified tail tolerance (lqJ)");

  auto* weights = app.add_subcommand("weights", "orthogonality weights and norms");
  add_spec_options(weights, sargs);
  weights->add_option("--ell", ells_csv, "deformation indices");
  weights->add_option("--format", format, "json or csv");
  weights->add_option("--out", out, "output path");
  weights->add_option("--digits", digits, "decimal digits");
  weights->add_option("--trunc-tol", trunc_tol, "certified tail tolerance (lqJ)");

  auto* verify = app.add_subcommand("verify", "run the identity suite");
  add_spec_options(verify, sargs);
  verify->add_option("--ell", ells_csv, "deformation indices (default 1,2,3)");
  verify->add_option("--checks", checks_csv, "run only checks whose name contains a token");
  verify->add_option("--inject-fault", fault,
                     "corrupt one constant: dn2, dln2, fhat, bhat, sl, kappahat");
  verify->add_option("--fault-scale", fault_scale,
                     "nonzero rational factor applied to the injected constant");
  verify->add_option("--export-matrices", matrices_path,
                     "write the polynomial-gauge operator matrices as JSON");
  verify->add_option("--report", report_path, "write the JSON report here");
  verify->add_option("--window", window_str, "identity window for infinite families");
  verify->add_option("--tail-tol", tail_tol_str, "certified sum-tail tolerance");
  verify->add_flag("--force", force, "run even when validation fails");
  verify->add_flag("--quiet", quiet, "suppress the text summary");
  verify->add_flag("--no-float", no_float, "skip float-backend sanity rows");

  auto* zeros = app.add_subcommand("zeros", "Sturm-exact zero counts");
  add_spec_options(zeros, sargs);
  zeros->add_option("--ell", ells_csv, "deformation indices");
  zeros->add_option("--n", nrange, "polynomial index range");
  zeros->add_option("--out", out, "output path");

  auto* limits = app.add_subcommand("limits", "float-backend limit sweeps");
  limits->add_option("--which", which, "qR-to-dqH, dqH-to-dH, qR-to-R, qR-to-lqJ")
      ->required();
  limits->add_option("--q", sargs.q, "base q");
  limits->add_option("--params", sargs.params, "target-family parameters")->required();
  limits->add_option("--N", sargs.N, "grid size");
  limits->add_option("--t", t_csv, "t sequence, e.g. 1e-2,1e-4,1e-6");
  limits->add_option("--k", k_range, "k range for q = 1-2^-k, e.g. 4..10");
  limits->add_option("--q-seq", q_seq, "explicit q sequence, e.g. 0.9,0.99,0.999");
  limits->add_option("--N-list", n_list, "N sequence for qR-to-lqJ");
  limits->add_option("--t-factor", t_factor, "t = t_factor q^N for qR-to-lqJ");
  limits->add_option("--out", out, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    set_float_precision(precision);
    if (table->parsed())
      return cmd_table(sargs, ells_csv, nrange, format, out, digits, trunc_tol);
    if (weights->parsed())
      return cmd_weights(sargs, ells_csv, format, out, digits, trunc_tol);
    if (verify->parsed()) {
      SuiteOptions opt;
      if (!ells_csv.empty()) opt.ells = parse_int_list(ells_csv);
      if (!checks_csv.empty()) {
        std::stringstream ss(checks_csv);
        std::string item;
        while (std::getline(ss, item, ',')) opt.only.push_back(item);
      }
      opt.faults.target = fault;
      if (!fault_scale.empty()) opt.faults.scale = parse_rational(fault_scale);
      opt.force = force;
      opt.float_checks = !no_float;
      opt.window = std::stoi(window_str);
      opt.tail_tol = parse_rational(tail_tol_str);
      return cmd_verify(sargs, opt, report_path, quiet, matrices_path);
    }
    if (zeros->parsed()) return cmd_zeros(sargs, ells_csv, nrange, out);
    if (limits->parsed())
      return cmd_limits(which, sargs.q, sargs.params, sargs.N, t_csv, k_range, q_seq,
                        n_list, t_factor, out);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
