#include "cli.hpp"

#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "nevpick/analysis.hpp"
#include "nevpick/ingestion.hpp"
#include "nevpick/io.hpp"

namespace nevpick::cli {

namespace {

namespace fs = std::filesystem;
using io::Json;

struct RunConfig {
  std::string input;
  std::string output;
  ContinuationOptions opts;
  double tau_rank = 1e-2;
  std::uint64_t seed = 1;
  long samples = 10000;
  int burn_in = 1000;
  int runs = 100;
  std::string variant = "monte-carlo";
  int target_degree = 0;
  int grid = 256;
};

void add_io(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--input", cfg.input, "Input JSON file")->required();
  cmd->add_option("--output", cfg.output, "Output directory (created if missing)")->required();
}

void add_solver(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--mu", cfg.opts.mu, "Predictor band on |e1' G|")->check(CLI::PositiveNumber);
  cmd->add_option("--tol-corrector", cfg.opts.tol_corrector, "Newton stop on ||G||_inf")->check(CLI::PositiveNumber);
  cmd->add_option("--step-init", cfg.opts.step_init, "Initial step in nu")->check(CLI::PositiveNumber);
  cmd->add_option("--step-min", cfg.opts.step_min, "Step floor before the path is declared failed")
      ->check(CLI::PositiveNumber);
}

void add_sampling(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--seed", cfg.seed, "Master seed");
  cmd->add_option("--samples", cfg.samples, "Samples kept after burn-in")->check(CLI::PositiveNumber);
  cmd->add_option("--burn-in", cfg.burn_in, "Samples discarded at the start")->check(CLI::NonNegativeNumber);
}

Json base_config(const std::string& command, const RunConfig& cfg) {
  return Json{{"command", command}, {"input", cfg.input}, {"output", cfg.output}};
}

Json solver_config(const RunConfig& cfg) { return io::options_to_json(cfg.opts); }

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir + ": " + ec.message());
}

std::string path_in(const std::string& dir, const char* name) { return (fs::path(dir) / name).string(); }

void report_violations(const ValidationFailure& ex) {
  std::cerr << "invalid input:\n";
  for (const auto& v : ex.violations()) std::cerr << "  [" << to_string(v.kind) << "] " << v.message << "\n";
}

int cmd_solve(const RunConfig& cfg) {
  const auto problem = io::problem_from_json(io::read_json_file(cfg.input));
  const Solution sol = solve(problem, cfg.opts);

  Json config = base_config("solve", cfg);
  config["solver"] = solver_config(cfg);
  Json out{{"config", config}};
  out.update(io::solution_to_json(sol));

  ensure_dir(cfg.output);
  io::write_text_file(path_in(cfg.output, "solution.json"), out.dump(2) + "\n");
  std::ostringstream csv;
  csv << io::csv_config_header(config);
  io::write_trajectory_csv(csv, sol);
  io::write_text_file(path_in(cfg.output, "trajectory.csv"), csv.str());

  std::cout << fmt::format("solved order {} in {} accepted states\n", sol.order(), sol.trajectory.size())
            << fmt::format("max interpolation residual {:.3e}\n", sol.diagnostics.max_interpolation_residual)
            << fmt::format("CEE residual {:.3e}, rho {:.6g}\n", sol.diagnostics.cee_residual, sol.rho);
  return kOk;
}

int cmd_simulate(const RunConfig& cfg) {
  MonteCarloConfig system = io::system_from_json(io::read_json_file(cfg.input));
  FilterBankSpec bank{system.resolved_poles(), cfg.burn_in, cfg.samples, cfg.seed};
  check_bank_poles(bank.poles);
  if (static_cast<int>(bank.poles.size()) != system.order + 1) throw InvalidInput("need order + 1 bank poles");

  const bool exact = cfg.variant == "exact";
  const auto y = simulate_arma(system.sigma, system.a, bank.samples, bank.burn_in, bank.seed);
  ValueEstimate est;
  if (exact) {
    est.values = exact_values(system.sigma, system.a, bank.poles);
    est.pick_positive_definite = is_positive_definite(pick_matrix(
        problem_from_bank(bank.poles, est.values, MonicPolynomial::monomial(system.order))));
  } else {
    est = estimate_values_from_moments(kernels::bank_second_moments_parallel(y, bank.poles), bank.poles);
  }
  const auto problem = problem_from_bank(bank.poles, est.values, system.resolved_sigma_hat());

  Json config = base_config("simulate", cfg);
  config["variant"] = cfg.variant;
  config["seed"] = cfg.seed;
  config["samples"] = cfg.samples;
  config["burn_in"] = cfg.burn_in;
  config["bank_poles"] = io::complex_array(bank.poles);
  config["true_sigma"] = io::vector_to_json(system.sigma.coeffs());
  config["true_a"] = io::vector_to_json(system.a.coeffs());
  Json out{{"config", config}};
  out.update(io::problem_to_json(problem));
  out["pick_positive_definite"] = est.pick_positive_definite;

  ensure_dir(cfg.output);
  io::write_text_file(path_in(cfg.output, "problem.json"), out.dump(2) + "\n");
  std::ostringstream csv;
  csv << io::csv_config_header(config) << "t,y\n";
  for (std::size_t t = 0; t < y.size(); ++t) csv << t << fmt::format(",{:.17g}\n", y[t]);
  io::write_text_file(path_in(cfg.output, "series.csv"), csv.str());

  if (!est.pick_positive_definite) {
    std::cerr << "estimated values fail the Pick test; increase --samples\n";
    return kNumericalFailure;
  }
  if (exact) std::cout << fmt::format("wrote {} exact interpolation values\n", problem.values.size());
  else std::cout << fmt::format("wrote {} interpolation values from {} samples\n", problem.values.size(), y.size());
  return kOk;
}

int cmd_detect_degree(const RunConfig& cfg) {
  MonteCarloConfig mc = io::system_from_json(io::read_json_file(cfg.input));
  if (cfg.variant == "exact") mc.variant = Variant::kExact;
  else if (cfg.variant == "monte-carlo") mc.variant = Variant::kMonteCarlo;
  else throw InvalidInput("--variant must be exact or monte-carlo");
  mc.samples = cfg.samples;
  mc.burn_in = cfg.burn_in;
  mc.seed = cfg.seed;
  mc.runs = cfg.runs;
  mc.tau_rank = cfg.tau_rank;
  mc.opts = cfg.opts;
  const auto result = monte_carlo(mc);

  Json config = base_config("detect-degree", cfg);
  config["variant"] = cfg.variant;
  config["order"] = mc.order;
  config["runs"] = mc.variant == Variant::kExact ? 1 : cfg.runs;
  config["seed"] = cfg.seed;
  config["samples"] = cfg.samples;
  config["burn_in"] = cfg.burn_in;
  config["tau_rank"] = cfg.tau_rank;
  config["sigma_hat"] = io::vector_to_json(mc.resolved_sigma_hat().coeffs());
  config["bank_poles"] = io::complex_array(mc.resolved_poles());
  config["solver"] = solver_config(cfg);

  Json out{{"config", config}};
  out.update(io::degree_report_to_json(result.report));
  out["failures"] = result.failures;
  Json runs = Json::array();
  for (const auto& rec : result.runs) {
    runs.push_back(Json{{"run", rec.run},
                        {"seed", rec.seed},
                        {"ok", rec.ok},
                        {"error", rec.error},
                        {"estimated_degree", rec.estimated_degree},
                        {"poles", io::complex_array(sorted_roots(rec.poles))}});
  }
  out["runs"] = runs;

  ensure_dir(cfg.output);
  io::write_text_file(path_in(cfg.output, "degree_report.json"), out.dump(2) + "\n");
  std::ostringstream csv;
  csv << io::csv_config_header(config) << "run,seed,ok,estimated_degree";
  for (int i = 1; i <= mc.order; ++i) csv << ",sv_" << i;
  csv << "\n";
  for (const auto& rec : result.runs) {
    csv << rec.run << "," << rec.seed << "," << (rec.ok ? 1 : 0) << "," << rec.estimated_degree;
    for (int i = 0; i < mc.order; ++i)
      csv << (rec.ok ? fmt::format(",{:.17g}", rec.singular_values[i]) : std::string(","));
    csv << "\n";
  }
  io::write_text_file(path_in(cfg.output, "runs.csv"), csv.str());

  const int total = static_cast<int>(result.runs.size());
  const int ok = total - result.failures;
  std::cout << fmt::format("estimated positive degree: {}\n", result.report.estimated_degree);
  std::cout << "mean singular values:";
  for (Eigen::Index i = 0; i < result.report.singular_values.size(); ++i)
    std::cout << fmt::format(" {:.4e}", result.report.singular_values[i]);
  std::cout << fmt::format("\nsuccessful runs: {}/{}\n", ok, total);
  return monte_carlo_exit_code(ok, total);
}

int cmd_reduce(const RunConfig& cfg) {
  const auto problem = io::problem_from_json(io::read_json_file(cfg.input));
  const Solution full = solve(problem, cfg.opts);
  const auto reduced = reduce_model(problem, full, cfg.target_degree, {}, cfg.opts);

  const auto thetas = uniform_grid(cfg.grid);
  const Vec phi_full = spectral_density(full, thetas);
  const Vec phi_reduced = spectral_density(reduced.solution, thetas);
  const double deviation = log_spectral_deviation(phi_full, phi_reduced);

  Json config = base_config("reduce", cfg);
  config["target_degree"] = cfg.target_degree;
  config["grid"] = cfg.grid;
  config["solver"] = solver_config(cfg);

  ensure_dir(cfg.output);
  Json full_json{{"config", config}};
  full_json.update(io::solution_to_json(full));
  io::write_text_file(path_in(cfg.output, "full_solution.json"), full_json.dump(2) + "\n");
  Json red_problem{{"config", config}};
  red_problem.update(io::problem_to_json(reduced.problem));
  io::write_text_file(path_in(cfg.output, "reduced_problem.json"), red_problem.dump(2) + "\n");
  Json red_solution{{"config", config}};
  red_solution.update(io::solution_to_json(reduced.solution));
  red_solution["log_spectral_deviation"] = deviation;
  io::write_text_file(path_in(cfg.output, "reduced_solution.json"), red_solution.dump(2) + "\n");

  std::ostringstream csv;
  csv << io::csv_config_header(config) << "theta,phi_full,phi_reduced\n";
  for (std::size_t i = 0; i < thetas.size(); ++i)
    csv << fmt::format("{:.17g},{:.17g},{:.17g}\n", thetas[i], phi_full[i], phi_reduced[i]);
  io::write_text_file(path_in(cfg.output, "spectra.csv"), csv.str());

  std::cout << fmt::format("reduced order {} -> {}; relative log-spectral deviation {:.4f}\n", problem.order(),
                           cfg.target_degree, deviation);
  return kOk;
}

}  // namespace

int monte_carlo_exit_code(int succeeded, int total) {
  if (succeeded == 0) return kNumericalFailure;
  if (2 * succeeded < total) return kPartialMonteCarlo;
  return kOk;
}

int run(int argc, const char* const* argv) {
  CLI::App app{"Nevanlinna-Pick interpolation with degree constraint via the covariance extension equation"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* solve_cmd = app.add_subcommand("solve", "Solve an interpolation problem by homotopy continuation");
  add_io(solve_cmd, cfg);
  add_solver(solve_cmd, cfg);

  auto* sim_cmd = app.add_subcommand("simulate", "Generate interpolation data from a simulated ARMA process");
  add_io(sim_cmd, cfg);
  add_sampling(sim_cmd, cfg);
  sim_cmd->add_option("--variant", cfg.variant, "monte-carlo (estimated values) | exact (true f at the nodes)")
      ->check(CLI::IsMember({"exact", "monte-carlo"}));

  auto* deg_cmd = app.add_subcommand("detect-degree", "Estimate the positive degree from singular values of P");
  add_io(deg_cmd, cfg);
  add_solver(deg_cmd, cfg);
  add_sampling(deg_cmd, cfg);
  deg_cmd->add_option("--runs", cfg.runs, "Monte Carlo repetitions")->check(CLI::PositiveNumber);
  deg_cmd->add_option("--variant", cfg.variant, "exact | monte-carlo")
      ->check(CLI::IsMember({"exact", "monte-carlo"}));
  deg_cmd->add_option("--tau-rank", cfg.tau_rank, "Relative singular-value threshold")->check(CLI::PositiveNumber);

  auto* red_cmd = app.add_subcommand("reduce", "Reduce a solved model to its dominant spectral zeros");
  add_io(red_cmd, cfg);
  add_solver(red_cmd, cfg);
  red_cmd->add_option("--target-degree", cfg.target_degree, "Reduced order m")->required()->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalidInput;
  }

  try {
    if (*solve_cmd) return cmd_solve(cfg);
    if (*sim_cmd) return cmd_simulate(cfg);
    if (*deg_cmd) return cmd_detect_degree(cfg);
    if (*red_cmd) return cmd_reduce(cfg);
  } catch (const ValidationFailure& ex) {
    report_violations(ex);
    return kInvalidInput;
  } catch (const InvalidInput& ex) {
    std::cerr << "invalid input: " << ex.what() << "\n";
    return kInvalidInput;
  } catch (const NumericalError& ex) {
    std::cerr << "numerical failure: " << ex.what() << "\n";
    return kNumericalFailure;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kNumericalFailure;
  }
  return kInvalidInput;
}

}  // namespace nevpick::cli
