#include "nevpick/io.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace nevpick::io {

Json complex_to_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_object() && j.contains("re")) {
    const double re = j.at("re").get<double>();
    const double im = j.contains("im") ? j.at("im").get<double>() : 0.0;
    return {re, im};
  }
  throw InvalidInput("expected a complex number {\"re\": r, \"im\": i}, got " + j.dump());
}

Json complex_array(const CVec& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v[i]));
  return out;
}

Json complex_array(const std::vector<Complex>& v) {
  Json out = Json::array();
  for (const Complex z : v) out.push_back(complex_to_json(z));
  return out;
}

Json vector_to_json(const Vec& v) { return Json(std::vector<double>(v.data(), v.data() + v.size())); }

Json matrix_to_json(const Mat& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(vector_to_json(m.row(i).transpose()));
  return out;
}

std::optional<MonicPolynomial> polynomial_from_json(const Json& j, const std::string& prefix) {
  try {
    if (j.contains(prefix + "_coeffs")) {
      const auto c = j.at(prefix + "_coeffs").get<std::vector<double>>();
      return MonicPolynomial(Eigen::Map<const Vec>(c.data(), static_cast<Eigen::Index>(c.size())));
    }
    if (j.contains(prefix + "_roots")) {
      std::vector<Complex> r;
      for (const auto& e : j.at(prefix + "_roots")) r.push_back(complex_from_json(e));
      return MonicPolynomial::from_roots(r);
    }
  } catch (const nlohmann::json::exception& ex) {
    throw InvalidInput(fmt::format("bad {} polynomial: {}", prefix, ex.what()));
  }
  return std::nullopt;
}

InterpolationProblem problem_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidInput("problem file must hold a JSON object");
  for (const char* key : {"nodes", "values"}) {
    if (!j.contains(key) || !j.at(key).is_array()) throw InvalidInput(fmt::format("problem needs a \"{}\" array", key));
  }
  InterpolationProblem problem;
  for (const auto& e : j.at("nodes")) {
    if (e.is_string()) {
      const auto s = e.get<std::string>();
      if (s != "inf" && s != "infinity") throw InvalidInput("node strings must be \"inf\", got \"" + s + "\"");
      problem.nodes.push_back(Node::infinity());
    } else {
      problem.nodes.push_back(Node::finite(complex_from_json(e)));
    }
  }
  for (const auto& e : j.at("values")) problem.values.push_back(complex_from_json(e));
  auto sigma = polynomial_from_json(j, "sigma");
  if (!sigma) throw InvalidInput("problem needs \"sigma_roots\" or \"sigma_coeffs\"");
  problem.sigma = std::move(*sigma);
  return problem;
}

Json problem_to_json(const InterpolationProblem& problem) {
  Json nodes = Json::array();
  for (const auto& node : problem.nodes) {
    if (node.is_infinity()) nodes.push_back("inf");
    else nodes.push_back(complex_to_json(node.value()));
  }
  return Json{{"nodes", nodes},
              {"values", complex_array(problem.values)},
              {"sigma_coeffs", vector_to_json(problem.sigma.coeffs())}};
}

MonteCarloConfig system_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidInput("system file must hold a JSON object");
  MonteCarloConfig cfg;
  auto sigma = polynomial_from_json(j, "sigma");
  auto a = polynomial_from_json(j, "a");
  if (!sigma || !a) throw InvalidInput("system needs sigma and a (as _roots or _coeffs)");
  cfg.sigma = std::move(*sigma);
  cfg.a = std::move(*a);
  cfg.order = j.contains("order") ? j.at("order").get<int>() : cfg.a.degree();
  cfg.sigma_hat = polynomial_from_json(j, "sigma_hat");
  if (j.contains("bank_poles")) {
    for (const auto& e : j.at("bank_poles")) cfg.poles.push_back(complex_from_json(e));
  }
  return cfg;
}

Json options_to_json(const ContinuationOptions& opts) {
  return Json{{"mu", opts.mu},
              {"tol_corrector", opts.tol_corrector},
              {"max_newton_iters", opts.max_newton_iters},
              {"step_init", opts.step_init},
              {"step_max", opts.step_max},
              {"step_min", opts.step_min},
              {"refine_iters", opts.refine_iters}};
}

Json solution_to_json(const Solution& sol) {
  const auto& diag = sol.diagnostics;
  return Json{
      {"coefficient_order", "descending powers"},
      {"interpolant", "f(z) = scale * b(z) / (2 a(z)), a and b monic"},
      {"order", sol.order()},
      {"a", vector_to_json(sol.a.coeffs())},
      {"b", vector_to_json(sol.b.coeffs())},
      {"sigma", vector_to_json(sol.sigma.coeffs())},
      {"rho", sol.rho},
      {"scale", sol.scale},
      {"p", vector_to_json(sol.p)},
      {"P", matrix_to_json(sol.P)},
      {"singular_values", vector_to_json(diag.singular_values)},
      {"interpolation_residuals", diag.interpolation_residuals},
      {"max_interpolation_residual", diag.max_interpolation_residual},
      {"cee_residual", diag.cee_residual},
      {"v_condition", diag.v_condition},
      {"poles", complex_array(sorted_roots(diag.poles))},
      {"zeros", complex_array(sorted_roots(diag.zeros))},
      {"spectral_zeros", complex_array(sorted_roots(diag.spectral_zeros))},
      {"path",
       Json{{"accepted_states", sol.trajectory.size()},
            {"rejected_band", diag.path.rejected_band},
            {"rejected_corrector", diag.path.rejected_corrector},
            {"rejected_poles", diag.path.rejected_poles},
            {"rejected_singular", diag.path.rejected_singular}}},
  };
}

Json degree_report_to_json(const DegreeReport& report) {
  Json per_run = Json::array();
  for (const auto& s : report.per_run) per_run.push_back(vector_to_json(s));
  return Json{{"singular_values", vector_to_json(report.singular_values)},
              {"estimated_degree", report.estimated_degree},
              {"threshold", report.threshold},
              {"per_run", per_run}};
}

void write_trajectory_csv(std::ostream& os, const Solution& sol) {
  const int n = sol.order();
  os << "nu";
  for (int i = 1; i <= n; ++i) os << ",p_" << i;
  for (int i = 1; i <= n; ++i) os << ",pole_re_" << i << ",pole_im_" << i;
  os << ",corrector_iters\n";
  for (const auto& st : sol.trajectory) {
    os << fmt::format("{:.17g}", st.nu);
    for (int i = 0; i < n; ++i) os << fmt::format(",{:.17g}", st.p[i]);
    const CVec poles = sorted_roots(st.poles);
    for (int i = 0; i < n; ++i) os << fmt::format(",{:.17g},{:.17g}", poles[i].real(), poles[i].imag());
    os << "," << st.corrector_iters << "\n";
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& ex) {
    throw InvalidInput(fmt::format("{} is not valid JSON: {}", path, ex.what()));
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string csv_config_header(const Json& config) {
  std::ostringstream os;
  for (const auto& [key, value] : config.items()) os << "# " << key << ": " << value.dump() << "\n";
  return os.str();
}

}  // namespace nevpick::io
