#pragma once

// Interpolation data from simulated time series: white noise through a stable
// ARMA filter sigma(z)/a(z), then through first-order filters z/(z - p_k).
// The positive-real part f of the output spectrum satisfies
//
//   f(1/p_k) = (1 - p_k^2) E{u_k^2} / 2.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nevpick/analysis.hpp"
#include "nevpick/kernels.hpp"

namespace nevpick {

struct FilterBankSpec {
  std::vector<Complex> poles;  // p_0 = 0 first, |p_k| < 1, conjugate-closed
  int burn_in = 1000;
  long samples = 10000;
  std::uint64_t seed = 1;
};

/// p_0 = 0, then n poles equally spaced on the circle of given radius: off the
/// real axis for even n, with one real pole (+radius) for odd n. Conjugates
/// are adjacent and exact.
std::vector<Complex> default_bank_poles(int order, double radius = 0.7);

/// Throws InvalidInput when the poles break any FilterBankSpec invariant.
void check_bank_poles(std::span<const Complex> poles);

/// Node 1/p_k for each pole; p_0 = 0 maps to infinity.
std::vector<Node> nodes_from_poles(std::span<const Complex> poles);

/// y_t = sum_i sigma_i e_{t-i} - sum_j a_j y_{t-j}, zero initial state, unit
/// variance Gaussian e from mt19937_64(seed); the first burn_in samples are dropped.
/// Throws InvalidInput when a is not Schur or the degrees differ.
std::vector<double> simulate_arma(const MonicPolynomial& sigma, const MonicPolynomial& a, long samples,
                                  int burn_in, std::uint64_t seed);

/// Filter outputs u_k for each pole (complex state for complex poles).
std::vector<std::vector<Complex>> filter_bank(std::span<const double> y, std::span<const Complex> poles,
                                              Execution exec = Execution::kParallel);

struct ValueEstimate {
  std::vector<Complex> values;
  bool pick_positive_definite = false;
};

/// w_k = (1 - p_k^2) mean(u_k^2) / 2, symmetrised over conjugate pairs, w_0 real.
ValueEstimate estimate_values(const std::vector<std::vector<Complex>>& outputs, std::span<const Complex> poles);

/// Same estimate from precomputed second moments mean(u_k^2).
ValueEstimate estimate_values_from_moments(std::span<const Complex> moments, std::span<const Complex> poles);

/// beta with f = beta / a positive real and f(z) + f(1/z) = sigma(z) sigma(1/z) / (a(z) a(1/z)).
FullVector positive_real_numerator(const MonicPolynomial& sigma, const MonicPolynomial& a);

/// f(1/p_k) for the true system, no sampling noise.
std::vector<Complex> exact_values(const MonicPolynomial& sigma, const MonicPolynomial& a,
                                  std::span<const Complex> poles);

InterpolationProblem problem_from_bank(std::span<const Complex> poles, std::vector<Complex> values,
                                       MonicPolynomial sigma_hat);

enum class Variant { kMonteCarlo, kExact };

struct MonteCarloConfig {
  MonicPolynomial sigma = MonicPolynomial::monomial(0);  // true system numerator
  MonicPolynomial a = MonicPolynomial::monomial(0);      // true system denominator
  int order = 0;                                         // n of the solve
  std::optional<MonicPolynomial> sigma_hat;              // default z^(n-d) sigma
  std::vector<Complex> poles;                            // default_bank_poles(order) when empty
  long samples = 10000;
  int burn_in = 1000;
  std::uint64_t seed = 1;
  int runs = 100;
  Variant variant = Variant::kMonteCarlo;
  double tau_rank = 1e-2;
  ContinuationOptions opts;

  MonicPolynomial resolved_sigma_hat() const;
  std::vector<Complex> resolved_poles() const;
};

struct RunRecord {
  int run = 0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  std::vector<Complex> values;
  Vec singular_values;
  int estimated_degree = 0;
  CVec poles;  // roots of the solved a(z)
};

struct MonteCarloReport {
  DegreeReport report;  // mean singular values over successful runs
  std::vector<RunRecord> runs;
  int failures = 0;
};

/// Problem for one run (simulated, or exact for Variant::kExact).
InterpolationProblem run_problem(const MonteCarloConfig& config, int run_index);

/// Runs the full pipeline config.runs times (once for the exact variant).
/// Run r uses seed ^ r; runs execute concurrently under Execution::kParallel.
MonteCarloReport monte_carlo(const MonteCarloConfig& config, Execution exec = Execution::kParallel);

}  // namespace nevpick
