#pragma once

// Command-line front end. Every subcommand maps onto one library operation and
// emits either JSON ({"command","config","result","mode"}) or RFC-4180 CSV.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "genbern/genbern.hpp"

namespace genbern::cli {

using nlohmann::json;

struct RunConfig {
  std::string command;
  int n = 1;
  std::string rho = "1";
  std::string mode = "auto";
  int grid = 201;
  int quad_order = 0;
  std::string output = "json";
  std::string out_path;
  std::optional<long> seed;

  std::string f;
  std::optional<std::string> at;
  int M = 1;
  int j = 1;
  int k = -1;
  std::string route;
  std::string rho_grid = "1,10,100,1000";
  std::string target = "lagrange";
};

/// Row-oriented data for CSV output.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

inline std::string write_csv(const CsvTable& t) {
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << csv_quote(cells[i]);
    os << "\r\n";
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
  return os.str();
}

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline json to_json(const Rational& q) {
  return {{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}
inline json to_json(double v) { return v; }

/// Inverse of to_json for rationals.
inline Rational rational_from_json(const json& j) {
  Rational q(mpz_class(j.at("num").get<std::string>(), 10), mpz_class(j.at("den").get<std::string>(), 10));
  q.canonicalize();
  return q;
}

inline std::string to_cell(const Rational& q) { return q.get_str(); }
inline std::string to_cell(double v) { return format_double(v); }

template <Scalar T>
json to_json(const std::vector<T>& v) {
  json a = json::array();
  for (const T& x : v) a.push_back(to_json(x));
  return a;
}

template <Scalar T>
json to_json(const Poly<T>& p) {
  return to_json(p.coeffs());
}

template <Scalar T>
T parse_scalar(const std::string& text) {
  const Rational q = expr::parse_rational(text);
  return from_rational<T>(q);
}

/// Grid 0, 1/(g-1), ..., 1 with values of p, as JSON arrays and CSV rows.
template <Scalar T>
void emit_grid(const Poly<T>& p, int grid, json& result, CsvTable& csv) {
  json xs = json::array(), vs = json::array();
  csv.header = {"x", "value"};
  for (int i = 0; i < grid; ++i) {
    const T x = from_ratio<T>(i, grid - 1);
    const T v = p(x);
    xs.push_back(to_json(x));
    vs.push_back(to_json(v));
    csv.rows.push_back({to_cell(x), to_cell(v)});
  }
  result["x"] = std::move(xs);
  result["value"] = std::move(vs);
}

template <Scalar T>
void emit_point_or_grid(const Poly<T>& p, const RunConfig& cfg, json& result, CsvTable& csv) {
  if (cfg.at) {
    const T x = parse_scalar<T>(*cfg.at);
    const T v = p(x);
    result["at"] = to_json(x);
    result["value"] = to_json(v);
    csv.header = {"x", "value"};
    csv.rows.push_back({to_cell(x), to_cell(v)});
  } else {
    emit_grid(p, cfg.grid, result, csv);
  }
}

inline LRoute parse_lroute(const std::string& s) {
  if (s.empty() || s == "inverse") return LRoute::InverseOperator;
  if (s == "system") return LRoute::LinearSystem;
  if (s == "spectral") return LRoute::Spectral;
  throw usage_error("unknown interpolation route '" + s + "' (inverse|system|spectral)");
}

inline const char* lroute_name(LRoute r) {
  switch (r) {
    case LRoute::InverseOperator: return "inverse";
    case LRoute::LinearSystem: return "system";
    case LRoute::Spectral: return "spectral";
  }
  return "";
}

/// Context handed to each subcommand.
template <Scalar T>
struct Job {
  const RunConfig& cfg;
  OperatorSpec<T> spec;
  std::optional<TargetFunction> f;
  json result = json::object();
  CsvTable csv;

  const TargetFunction& target() const {
    if (!f) throw usage_error(cfg.command + ": --f is required");
    return *f;
  }
};

template <Scalar T>
void cmd_eval(Job<T>& job) {
  const auto table = functional_table(job.spec, job.target());
  const auto u = apply_U(table);
  job.result["table"] = to_json(table.values);
  job.result["poly"] = to_json(u);
  emit_point_or_grid(u, job.cfg, job.result, job.csv);
}

template <Scalar T>
void cmd_interpolate(Job<T>& job) {
  const auto table = functional_table(job.spec, job.target());
  const auto r = apply_L(table, parse_lroute(job.cfg.route));
  job.result["route"] = lroute_name(r.route);
  job.result["table"] = to_json(table.values);
  job.result["poly"] = to_json(r.interpolant);
  emit_point_or_grid(r.interpolant, job.cfg, job.result, job.csv);
}

template <Scalar T>
void cmd_eigen(Job<T>& job) {
  const auto es = eigen_system(job.spec);
  job.result["lambdas"] = to_json(es.lambdas);
  json polys = json::array();
  for (const auto& p : es.eigenpolys) polys.push_back(to_json(p));
  job.result["eigenpolys"] = std::move(polys);
  json dual = json::array();
  for (std::size_t r = 0; r < es.dual_matrix.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < es.dual_matrix.cols(); ++c) row.push_back(to_json(es.dual_matrix(r, c)));
    dual.push_back(std::move(row));
  }
  job.result["dual_matrix"] = std::move(dual);
  job.csv.header = {"k", "lambda"};
  for (std::size_t k = 0; k < es.lambdas.size(); ++k) job.csv.rows.push_back({std::to_string(k), to_cell(es.lambdas[k])});
}

template <Scalar T>
void cmd_divdiff(Job<T>& job) {
  const auto table = functional_table(job.spec, job.target());
  const auto es = eigen_system(job.spec);
  std::vector<std::pair<std::string, DivDiffRoute>> routes;
  const std::string& r = job.cfg.route;
  if (r.empty() || r == "all")
    routes = {{"determinant", DivDiffRoute::Determinant}, {"recurrence", DivDiffRoute::Recurrence}, {"spectral", DivDiffRoute::Spectral}};
  else if (r == "determinant")
    routes = {{r, DivDiffRoute::Determinant}};
  else if (r == "recurrence")
    routes = {{r, DivDiffRoute::Recurrence}};
  else if (r == "spectral")
    routes = {{r, DivDiffRoute::Spectral}};
  else
    throw usage_error("unknown divided-difference route '" + r + "' (determinant|recurrence|spectral|all)");
  json values = json::object();
  job.csv.header = {"route", "value"};
  for (const auto& [name, route] : routes) {
    const T v = gen_divided_difference(table, route, &es);
    values[name] = to_json(v);
    job.csv.rows.push_back({name, to_cell(v)});
  }
  job.result["table"] = to_json(table.values);
  job.result["divdiff"] = std::move(values);
  std::vector<T> fv;
  for (int k = 0; k <= job.spec.n(); ++k) fv.push_back(job.target().template value<T>(from_ratio<T>(k, job.spec.n())));
  job.result["classical"] =
      to_json(classical_divided_difference(NodeSet<T>::equally_spaced(job.spec.n()), std::span<const T>(fv)));
}

template <Scalar T>
void cmd_boolean_sum(Job<T>& job) {
  if (job.cfg.M < 1) throw usage_error("boolean-sum: --M must be >= 1");
  const auto es = eigen_system(job.spec);
  const auto table = functional_table(job.spec, job.target());
  const std::string& r = job.cfg.route;
  BooleanRoute route = BooleanRoute::Spectral;
  if (r == "iterative")
    route = BooleanRoute::Iterative;
  else if (!r.empty() && r != "spectral")
    throw usage_error("unknown boolean-sum route '" + r + "' (spectral|iterative)");
  const auto res = boolean_sum_apply(es, job.cfg.M, table, route);
  const auto lf = apply_L(table, LRoute::Spectral, &es).interpolant;
  job.result["M"] = job.cfg.M;
  job.result["route"] = route == BooleanRoute::Spectral ? "spectral" : "iterative";
  job.result["poly"] = to_json(res.image);
  job.result["gap_to_interpolant"] = grid_max_abs(res.image - lf, job.cfg.grid);
  emit_point_or_grid(res.image, job.cfg, job.result, job.csv);
}

template <Scalar T>
void cmd_kernel_roots(Job<T>& job) {
  const auto cert = kernel_root_certificate(job.spec);
  job.result["poly"] = to_json(cert.poly);
  json iv = json::array();
  job.csv.header = {"i", "lo", "hi", "simple"};
  for (std::size_t i = 0; i < cert.intervals.size(); ++i) {
    const auto& r = cert.intervals[i];
    iv.push_back({{"lo", to_json(r.lo)}, {"hi", to_json(r.hi)}, {"simple", r.simple}});
    job.csv.rows.push_back({std::to_string(i), to_cell(r.lo), to_cell(r.hi), r.simple ? "true" : "false"});
  }
  job.result["intervals"] = std::move(iv);
  job.result["root_count"] = cert.intervals.size();
  job.result["certified"] = true;
}

template <Scalar T>
void cmd_derivative(Job<T>& job) {
  const auto dt = forward_differences(functional_table(job.spec, job.target()));
  const auto d = derivative_via_differences(dt, job.cfg.j);
  json deltas = json::array();
  for (const auto& row : dt.deltas) deltas.push_back(to_json(row));
  job.result["j"] = job.cfg.j;
  job.result["deltas"] = std::move(deltas);
  job.result["poly"] = to_json(d);
  job.result["taylor"] = to_json(taylor_coefficients(dt));
  emit_point_or_grid(d, job.cfg, job.result, job.csv);
}

inline void cmd_limit_study(Job<double>& job) {
  const TargetFunction& f = job.target();
  std::vector<double> rhos;
  {
    std::stringstream ss(job.cfg.rho_grid);
    std::string item;
    while (std::getline(ss, item, ',')) rhos.push_back(parse_scalar<double>(item));
  }
  if (rhos.empty()) throw usage_error("limit-study: empty --rho-grid");
  const std::string& target = job.cfg.target;
  const int n = job.spec.n();
  std::vector<double> errors;
  for (double rho : rhos) {
    OperatorSpec<double> spec(n, rho);
    spec.quadrature_order = job.cfg.quad_order;
    double err = 0.0;
    if (target == "bernstein") {
      err = grid_max_abs(apply_U(spec, f) - apply_bernstein<double>(n, f), job.cfg.grid);
    } else if (target == "lagrange") {
      err = grid_max_abs(apply_L(spec, f).interpolant - lagrange_classical<double>(n, f), job.cfg.grid);
    } else if (target == "functionals") {
      const auto table = functional_table(spec, f);
      for (int k = 0; k <= n; ++k) err = std::max(err, std::fabs(table.values[static_cast<std::size_t>(k)] - f(static_cast<double>(k) / n)));
    } else if (target == "divdiff") {
      std::vector<double> fv;
      for (int k = 0; k <= n; ++k) fv.push_back(f(static_cast<double>(k) / n));
      const double classical = classical_divided_difference(NodeSet<double>::equally_spaced(n), std::span<const double>(fv));
      err = std::fabs(gen_divided_difference(spec, f) - classical);
    } else {
      throw usage_error("unknown limit-study target '" + target + "' (bernstein|lagrange|functionals|divdiff)");
    }
    errors.push_back(err);
  }
  bool monotone = true;
  for (std::size_t i = 1; i < errors.size(); ++i) monotone = monotone && errors[i] < errors[i - 1];
  job.result["target"] = target;
  job.result["rho"] = rhos;
  job.result["error"] = errors;
  job.result["monotone_decreasing"] = monotone;
  job.csv.header = {"rho", "error"};
  for (std::size_t i = 0; i < rhos.size(); ++i) job.csv.rows.push_back({format_double(rhos[i]), format_double(errors[i])});
}

inline void cmd_remainder(Job<double>& job) {
  const auto ra = remainder_analysis(job.spec, job.target(), std::max(job.cfg.grid, 64));
  job.result["roots"] = ra.roots;
  job.result["root_count"] = ra.roots.size();
  job.result["endpoints_are_roots"] = ra.endpoints_are_roots;
  job.result["conclusive"] = ra.conclusive;
  job.result["omega"] = to_json(ra.omega);
  job.result["interpolant"] = to_json(ra.interpolant);
  job.result["ratio_range"] = {ra.ratio_min, ra.ratio_max};
  if (ra.derivative_range) job.result["derivative_range"] = {ra.derivative_range->first, ra.derivative_range->second};
  job.result["contained"] = ra.contained;
  job.csv.header = {"i", "root"};
  for (std::size_t i = 0; i < ra.roots.size(); ++i) job.csv.rows.push_back({std::to_string(i), format_double(ra.roots[i])});
}

template <Scalar T>
void dispatch(Job<T>& job) {
  const std::string& c = job.cfg.command;
  if (c == "eval") return cmd_eval(job);
  if (c == "interpolate") return cmd_interpolate(job);
  if (c == "eigen") return cmd_eigen(job);
  if (c == "divdiff") return cmd_divdiff(job);
  if (c == "boolean-sum") return cmd_boolean_sum(job);
  if (c == "kernel-roots") return cmd_kernel_roots(job);
  if (c == "derivative") return cmd_derivative(job);
  if constexpr (!is_exact_v<T>) {
    if (c == "limit-study") return cmd_limit_study(job);
    if (c == "remainder") return cmd_remainder(job);
  }
  throw usage_error("unknown command " + c);
}

inline json config_json(const RunConfig& cfg) {
  json j = {{"n", cfg.n}, {"rho", cfg.rho}, {"mode", cfg.mode}, {"grid", cfg.grid}, {"output", cfg.output}};
  if (cfg.quad_order > 0) j["quad_order"] = cfg.quad_order;
  if (!cfg.f.empty()) j["f"] = cfg.f;
  if (cfg.at) j["at"] = *cfg.at;
  if (cfg.seed) j["seed"] = *cfg.seed;
  if (cfg.command == "boolean-sum") j["M"] = cfg.M;
  if (cfg.command == "derivative") j["j"] = cfg.j;
  if (cfg.k >= 0) j["k"] = cfg.k;
  if (!cfg.route.empty()) j["route"] = cfg.route;
  if (cfg.command == "limit-study") {
    j["rho_grid"] = cfg.rho_grid;
    j["target"] = cfg.target;
  }
  return j;
}

template <Scalar T>
std::string execute(const RunConfig& cfg, const std::optional<expr::FunctionExpr>& fexpr) {
  Job<T> job{cfg, OperatorSpec<T>(cfg.n, parse_scalar<T>(cfg.rho)), std::nullopt};
  job.spec.quadrature_order = cfg.quad_order;
  if (fexpr) job.f = fexpr->to_target();
  dispatch(job);
  if (cfg.output == "csv") return write_csv(job.csv);
  json doc = {{"command", cfg.command}, {"config", config_json(cfg)}, {"result", job.result},
              {"mode", is_exact_v<T> ? "exact" : "float"}};
  return doc.dump(2) + "\n";
}

/// Runs one command. Exit codes: 0 success, 1 usage error, 2 numerical guard,
/// 3 property violation.
inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bernstein-type operators U_n^rho, their eigenstructure and Lagrange-type interpolation"};
  app.require_subcommand(1);
  RunConfig cfg;

  struct Sub {
    const char* name;
    const char* help;
    bool needs_f;
  };
  const Sub subs[] = {
      {"eval", "evaluate U_n^rho f", true},
      {"interpolate", "Lagrange-type interpolant L_n^rho f", true},
      {"eigen", "eigenvalues, eigenpolynomials and dual functionals", false},
      {"divdiff", "generalized divided difference [F_{n,0},...,F_{n,n}; f]", true},
      {"boolean-sum", "iterated Boolean sum of U_n^rho", true},
      {"kernel-roots", "certify the n+1 roots of the kernel polynomial", false},
      {"derivative", "j-th derivative of U_n^rho f via forward differences", true},
      {"limit-study", "errors against the rho -> infinity limits along a rho grid", true},
      {"remainder", "roots of the remainder f - L_n^rho f", true},
  };
  for (const auto& s : subs) {
    CLI::App* sc = app.add_subcommand(s.name, s.help);
    sc->add_option("--n", cfg.n, "degree n >= 1")->required();
    sc->add_option("--rho", cfg.rho, "parameter rho > 0 (decimal or p/q)");
    auto* fopt = sc->add_option("--f", cfg.f, "target function, e.g. \"x^2\" or \"exp(x)\"");
    if (s.needs_f) fopt->required();
    sc->add_option("--grid", cfg.grid, "grid points on [0,1]")->check(CLI::Range(2, 1000000));
    sc->add_option("--quad-order", cfg.quad_order, "Gauss-Jacobi order for non-polynomial f");
    sc->add_option("--mode", cfg.mode, "auto|exact|float")->check(CLI::IsMember({"auto", "exact", "float"}));
    sc->add_option("--output", cfg.output, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    sc->add_option("--out", cfg.out_path, "write output to this path");
    sc->add_option("--seed", cfg.seed, "seed for randomized runs");
    sc->add_option("--at", cfg.at, "evaluate at this point instead of a grid");
    sc->add_option("--M", cfg.M, "Boolean sum order");
    sc->add_option("--j", cfg.j, "derivative order");
    sc->add_option("--k", cfg.k, "functional index");
    sc->add_option("--route", cfg.route, "computation route");
    sc->add_option("--rho-grid", cfg.rho_grid, "comma-separated rho values");
    sc->add_option("--target", cfg.target, "bernstein|lagrange|functionals|divdiff");
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  for (auto* sc : app.get_subcommands()) cfg.command = sc->get_name();

  try {
    std::optional<expr::FunctionExpr> fexpr;
    if (!cfg.f.empty()) fexpr.emplace(cfg.f);

    bool exact = false;
    if (cfg.command == "limit-study" || cfg.command == "remainder") {
      if (cfg.mode == "exact") throw usage_error(cfg.command + " runs in float mode only");
    } else if (cfg.mode == "exact") {
      if (fexpr && !fexpr->is_polynomial()) throw usage_error("exact mode requires a polynomial --f with rational literals");
      exact = true;
    } else if (cfg.mode == "auto") {
      exact = (!fexpr || fexpr->is_polynomial()) && cfg.n <= degree_cap();
    }

    const std::string text = exact ? execute<Rational>(cfg, fexpr) : execute<double>(cfg, fexpr);
    if (!cfg.out_path.empty()) {
      std::ofstream file(cfg.out_path, std::ios::binary);
      if (!file) throw usage_error("cannot open " + cfg.out_path);
      file << text;
    } else {
      out << text;
    }
    return 0;
  } catch (const usage_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const numerical_guard& e) {
    err << "refused: " << e.what() << "\n";
    return 2;
  } catch (const property_violation& e) {
    err << "property violation: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace genbern::cli
