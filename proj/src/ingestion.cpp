#include "nevpick/ingestion.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <fmt/format.h>

namespace nevpick {

std::vector<Complex> default_bank_poles(int order, double radius) {
  if (order < 0) throw InvalidInput("negative bank order");
  std::vector<Complex> poles{0.0};
  const double pi = std::numbers::pi;
  if (order % 2 == 1) {
    poles.emplace_back(radius, 0.0);
    for (int j = 1; 2 * j < order; ++j) {
      const Complex p = std::polar(radius, 2.0 * pi * j / order);
      poles.push_back(p);
      poles.push_back(std::conj(p));
    }
  } else {
    for (int j = 0; 2 * j < order; ++j) {
      const Complex p = std::polar(radius, pi * (2 * j + 1) / order);
      poles.push_back(p);
      poles.push_back(std::conj(p));
    }
  }
  return poles;
}

std::vector<Node> nodes_from_poles(std::span<const Complex> poles) {
  std::vector<Node> nodes;
  for (const Complex p : poles) nodes.push_back(p == Complex(0.0) ? Node::infinity() : Node::finite(1.0 / p));
  return nodes;
}

void check_bank_poles(std::span<const Complex> poles) {
  if (poles.empty() || poles[0] != Complex(0.0)) throw InvalidInput("filter bank must start with the pole p_0 = 0");
  for (std::size_t k = 0; k < poles.size(); ++k) {
    if (!(std::abs(poles[k]) < 1.0)) throw InvalidInput(fmt::format("bank pole {} is not inside the unit disk", k));
    if (k > 0 && poles[k] == Complex(0.0)) throw InvalidInput("only p_0 may be zero");
    for (std::size_t l = 0; l < k; ++l) {
      if (std::abs(poles[k] - poles[l]) < 1e-12) throw InvalidInput(fmt::format("bank poles {} and {} coincide", l, k));
    }
  }
  const auto nodes = nodes_from_poles(poles);
  const auto partner = conjugate_partners(nodes);
  for (std::size_t k = 0; k < partner.size(); ++k) {
    if (partner[k] < 0) throw InvalidInput(fmt::format("bank pole {} has no conjugate partner", k));
  }
}

std::vector<double> simulate_arma(const MonicPolynomial& sigma, const MonicPolynomial& a, long samples,
                                  int burn_in, std::uint64_t seed) {
  if (sigma.degree() != a.degree()) throw InvalidInput("sigma and a must have the same degree");
  if (a.degree() >= 1 && !roots_and_schur(a).is_schur) throw InvalidInput("a is not a Schur polynomial");
  if (samples < 0 || burn_in < 0) throw InvalidInput("negative sample count");
  const int d = a.degree();
  const long total = samples + burn_in;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<double> e(total), y(total, 0.0);
  for (auto& v : e) v = noise(rng);
  for (long t = 0; t < total; ++t) {
    double ma = 0.0, ar = 0.0;
    for (int i = 1; i <= d && i <= t; ++i) {
      ma += sigma[i] * e[t - i];
      ar += a[i] * y[t - i];
    }
    // e_t + (ma - ar) keeps sigma == a bit-exact: ma - ar is exactly zero.
    y[t] = e[t] + (ma - ar);
  }
  return {y.begin() + burn_in, y.end()};
}

std::vector<std::vector<Complex>> filter_bank(std::span<const double> y, std::span<const Complex> poles,
                                              Execution exec) {
  return exec == Execution::kParallel ? kernels::filter_bank_parallel(y, poles) : kernels::filter_bank_serial(y, poles);
}

ValueEstimate estimate_values_from_moments(std::span<const Complex> moments, std::span<const Complex> poles) {
  if (moments.size() != poles.size()) throw InvalidInput("one moment per bank pole required");
  const std::size_t m = poles.size();
  std::vector<Complex> raw(m);
  for (std::size_t k = 0; k < m; ++k) raw[k] = 0.5 * (1.0 - poles[k] * poles[k]) * moments[k];

  const auto nodes = nodes_from_poles(poles);
  const auto partner = conjugate_partners(nodes);
  ValueEstimate out;
  out.values.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    const int l = partner[k];
    if (l < 0) throw InvalidInput("bank poles are not conjugate-closed");
    out.values[k] = l == static_cast<int>(k) ? Complex(raw[k].real(), 0.0) : 0.5 * (raw[k] + std::conj(raw[l]));
  }
  // Pair members are symmetric up to rounding in the average; make them exact.
  for (std::size_t k = 0; k < m; ++k) {
    const auto l = static_cast<std::size_t>(partner[k]);
    if (l > k) out.values[l] = std::conj(out.values[k]);
  }
  InterpolationProblem probe{nodes, out.values, MonicPolynomial::monomial(static_cast<int>(m) - 1)};
  out.pick_positive_definite = std::all_of(out.values.begin(), out.values.end(),
                                           [](Complex w) { return w.real() > 0.0; }) &&
                               is_positive_definite(pick_matrix(probe));
  return out;
}

ValueEstimate estimate_values(const std::vector<std::vector<Complex>>& outputs, std::span<const Complex> poles) {
  std::vector<Complex> moments(outputs.size());
  for (std::size_t k = 0; k < outputs.size(); ++k) {
    Complex acc = 0.0;
    for (const Complex u : outputs[k]) acc += u * u;
    moments[k] = outputs[k].empty() ? Complex(0.0) : acc / static_cast<double>(outputs[k].size());
  }
  return estimate_values_from_moments(moments, poles);
}

FullVector positive_real_numerator(const MonicPolynomial& sigma, const MonicPolynomial& a) {
  if (sigma.degree() != a.degree()) throw InvalidInput("sigma and a must have the same degree");
  // sym_coeffs doubles: x y* + y x* with x = y = sigma.
  const Vec rhs = 0.5 * sym_coeffs(sigma.coeffs(), sigma.coeffs());
  Eigen::FullPivLU<Mat> lu(build_S(a.coeffs()));
  if (!lu.isInvertible()) throw NumericalError("S(a) is singular; a is not Schur");
  return lu.solve(rhs);
}

std::vector<Complex> exact_values(const MonicPolynomial& sigma, const MonicPolynomial& a,
                                  std::span<const Complex> poles) {
  const FullVector beta = positive_real_numerator(sigma, a);
  std::vector<Complex> out;
  for (const Complex p : poles) {
    // f(1/p) through the reversed polynomials, exact at p = 0.
    Complex num = 0.0, den = 0.0;
    for (int i = a.degree(); i >= 0; --i) {
      num = num * p + beta[i];
      den = den * p + a[i];
    }
    out.push_back(num / den);
  }
  // Force exact conjugate symmetry and a real w_0.
  const auto partner = conjugate_partners(nodes_from_poles(poles));
  for (std::size_t k = 0; k < out.size(); ++k) {
    const int l = partner[k];
    if (l == static_cast<int>(k)) out[k] = out[k].real();
    else if (l > static_cast<int>(k)) out[l] = std::conj(out[k]);
  }
  return out;
}

InterpolationProblem problem_from_bank(std::span<const Complex> poles, std::vector<Complex> values,
                                       MonicPolynomial sigma_hat) {
  return {nodes_from_poles(poles), std::move(values), std::move(sigma_hat)};
}

MonicPolynomial MonteCarloConfig::resolved_sigma_hat() const {
  if (sigma_hat) return *sigma_hat;
  const int lift = order - sigma.degree();
  if (lift < 0) throw InvalidInput("solve order is below the true system degree; give sigma_hat explicitly");
  return MonicPolynomial::monomial(lift) * sigma;
}

std::vector<Complex> MonteCarloConfig::resolved_poles() const {
  return poles.empty() ? default_bank_poles(order) : poles;
}

namespace {

InterpolationProblem make_run_problem(const MonteCarloConfig& config, int run_index, Execution exec,
                                      bool* pick_ok) {
  const auto poles = config.resolved_poles();
  check_bank_poles(poles);
  if (static_cast<int>(poles.size()) != config.order + 1) throw InvalidInput("need order + 1 bank poles");
  std::vector<Complex> values;
  bool pd = true;
  if (config.variant == Variant::kExact) {
    values = exact_values(config.sigma, config.a, poles);
  } else {
    const auto y = simulate_arma(config.sigma, config.a, config.samples, config.burn_in,
                                 config.seed ^ static_cast<std::uint64_t>(run_index));
    const auto moments = exec == Execution::kParallel ? kernels::bank_second_moments_parallel(y, poles)
                                                      : kernels::bank_second_moments_serial(y, poles);
    auto est = estimate_values_from_moments(moments, poles);
    values = std::move(est.values);
    pd = est.pick_positive_definite;
  }
  if (pick_ok) *pick_ok = pd;
  return problem_from_bank(poles, std::move(values), config.resolved_sigma_hat());
}

RunRecord execute_run(const MonteCarloConfig& config, int run_index, Execution exec) {
  RunRecord rec;
  rec.run = run_index;
  rec.seed = config.seed ^ static_cast<std::uint64_t>(run_index);
  try {
    bool pick_ok = true;
    const auto problem = make_run_problem(config, run_index, exec, &pick_ok);
    rec.values = problem.values;
    if (!pick_ok) {
      rec.error = "estimated data fail the Pick test; increase the sample count";
      return rec;
    }
    const Solution sol = solve(problem, config.opts);
    rec.singular_values = singular_values(sol.P);
    rec.estimated_degree = estimate_positive_degree(rec.singular_values, config.tau_rank);
    rec.poles = sol.diagnostics.poles;
    rec.ok = true;
  } catch (const std::exception& ex) {
    rec.error = ex.what();
  }
  return rec;
}

}  // namespace

InterpolationProblem run_problem(const MonteCarloConfig& config, int run_index) {
  return make_run_problem(config, run_index, Execution::kParallel, nullptr);
}

MonteCarloReport monte_carlo(const MonteCarloConfig& config, Execution exec) {
  if (config.runs < 1) throw InvalidInput("at least one run required");
  const int runs = config.variant == Variant::kExact ? 1 : config.runs;
  MonteCarloReport out;
  out.runs.resize(runs);
  if (exec == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < runs; ++r) out.runs[r] = execute_run(config, r, Execution::kSerial);
  } else {
    for (int r = 0; r < runs; ++r) out.runs[r] = execute_run(config, r, Execution::kSerial);
  }

  Vec sum = Vec::Zero(config.order);
  int ok = 0;
  for (const auto& rec : out.runs) {
    if (!rec.ok) {
      ++out.failures;
      continue;
    }
    sum += rec.singular_values;
    out.report.per_run.push_back(rec.singular_values);
    ++ok;
  }
  out.report.threshold = config.tau_rank;
  out.report.singular_values = ok > 0 ? Vec(sum / ok) : Vec::Zero(config.order);
  out.report.estimated_degree = estimate_positive_degree(out.report.singular_values, config.tau_rank);
  return out;
}

}  // namespace nevpick
