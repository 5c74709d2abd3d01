// Serial versus OpenMP timings for the data-parallel kernels.
//
//   bench_kernels [samples] [repeats]

#include <chrono>
#include <algorithm>
#include <cstdlib>
#include <string>

#include <fmt/format.h>

#include "nevpick/analysis.hpp"
#include "nevpick/ingestion.hpp"
#include "nevpick/kernels.hpp"

using namespace nevpick;

namespace {

template <class F>
double best_seconds(int repeats, F&& body) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    body();
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    best = std::min(best, dt.count());
  }
  return best;
}

void row(const std::string& name, double serial, double parallel, bool identical) {
  fmt::print("{:<22} {:>11.4f} {:>11.4f} {:>8.2f}x  {}\n", name, serial * 1e3, parallel * 1e3, serial / parallel,
             identical ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  const long samples = argc > 1 ? std::atol(argv[1]) : 200000;
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 5;

  const std::vector<Complex> a_roots{std::polar(0.9, 0.7), std::polar(0.9, -0.7), std::polar(0.8, 2.1),
                                     std::polar(0.8, -2.1)};
  const std::vector<Complex> sigma_roots{0.5, -0.3, 0.2, 0.1};
  const auto a = MonicPolynomial::from_roots(a_roots);
  const auto sigma = MonicPolynomial::from_roots(sigma_roots);
  const auto y = simulate_arma(sigma, a, samples, 1000, 42);
  const auto poles = default_bank_poles(16);

  fmt::print("threads {}, samples {}, best of {}\n", kernels::max_threads(), samples, repeats);
  fmt::print("{:<22} {:>11} {:>11} {:>9}\n", "kernel", "serial ms", "omp ms", "speedup");

  std::vector<std::vector<Complex>> fs, fp;
  const double t_fs = best_seconds(repeats, [&] { fs = kernels::filter_bank_serial(y, poles); });
  const double t_fp = best_seconds(repeats, [&] { fp = kernels::filter_bank_parallel(y, poles); });
  row("filter bank", t_fs, t_fp, fs == fp);

  std::vector<Complex> ms, mp;
  const double t_ms = best_seconds(repeats, [&] { ms = kernels::bank_second_moments_serial(y, poles); });
  const double t_mp = best_seconds(repeats, [&] { mp = kernels::bank_second_moments_parallel(y, poles); });
  row("second moments", t_ms, t_mp, ms == mp);

  MonteCarloConfig mc;
  mc.sigma = sigma;
  mc.a = a;
  mc.order = 4;
  mc.samples = 10000;
  mc.runs = 16;
  const auto problem = run_problem(mc, 0);
  const Solution sol = solve(problem);
  const auto grid = uniform_grid(1 << 16);
  Vec ss, sp;
  const double t_ss = best_seconds(repeats, [&] { ss = kernels::spectral_density_serial(sol, grid); });
  const double t_sp = best_seconds(repeats, [&] { sp = kernels::spectral_density_parallel(sol, grid); });
  row("spectral grid", t_ss, t_sp, ss == sp);

  MonteCarloReport rs, rp;
  const int mc_repeats = std::max(1, repeats / 2);
  const double t_cs = best_seconds(mc_repeats, [&] { rs = monte_carlo(mc, Execution::kSerial); });
  const double t_cp = best_seconds(mc_repeats, [&] { rp = monte_carlo(mc, Execution::kParallel); });
  row("monte carlo (16 runs)", t_cs, t_cp, rs.report.singular_values == rp.report.singular_values);
  return 0;
}
