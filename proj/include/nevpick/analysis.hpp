#pragma once

#include <span>
#include <vector>

#include "nevpick/continuation.hpp"

namespace nevpick {

struct DegreeReport {
  Vec singular_values;  // descending (mean over runs for Monte Carlo)
  int estimated_degree = 0;
  double threshold = 1e-2;
  std::vector<Vec> per_run;
};

/// Singular values in descending order.
Vec singular_values(const Mat& P);

/// Number of singular values >= tau_rank * svals[0]; 0 for an all-zero spectrum.
int estimate_positive_degree(const Vec& svals, double tau_rank = 1e-2);

DegreeReport degree_report(const Mat& P, double tau_rank = 1e-2);

/// Which interpolation conditions the reduced problem keeps. Empty means the
/// infinity node plus the m finite nodes of largest modulus (smallest filter
/// pole), conjugate pairs kept together, ties broken by |arg| ascending.
struct ReductionSpec {
  std::vector<int> node_indices;
};

struct ReducedModel {
  InterpolationProblem problem;
  Solution solution;
};

/// The m spectral zeros of largest modulus (ties by angle ascending), as a
/// conjugate-closed set. Throws InvalidInput when a conjugate pair would be split.
std::vector<Complex> dominant_zeros(const CVec& zeros, int m);

/// Default node selection for an order-m reduction of `problem`.
std::vector<int> select_reduction_nodes(const InterpolationProblem& problem, int m);

/// Re-solves at order m with sigma built from the m dominant spectral zeros.
/// m == order returns the inputs unchanged.
ReducedModel reduce_model(const InterpolationProblem& problem, const Solution& solution, int m,
                          const ReductionSpec& spec = {}, const ContinuationOptions& opts = {});

/// Phi(theta) = scale * rho^2 |sigma(e^{i theta})|^2 / |a(e^{i theta})|^2, which
/// equals 2 Re f(e^{i theta}).
double spectral_density(const Solution& solution, double theta);
Vec spectral_density(const Solution& solution, std::span<const double> thetas);

/// theta_k = -pi + 2 pi k / count, k = 0..count-1.
std::vector<double> uniform_grid(int count);

/// ||log phi - log phi_ref||_2 / ||log phi_ref||_2.
double log_spectral_deviation(const Vec& phi_ref, const Vec& phi);

/// Roots sorted by argument, then modulus. Deterministic order for output.
CVec sorted_roots(const CVec& r);

}  // namespace nevpick
