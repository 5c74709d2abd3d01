#include "nevpick/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nevpick/kernels.hpp"

namespace nevpick {

Vec singular_values(const Mat& P) {
  if (P.size() == 0) return Vec(0);
  Eigen::JacobiSVD<Mat> svd(P);
  Vec s = svd.singularValues();  // already descending
  std::sort(s.data(), s.data() + s.size(), std::greater<>());
  return s;
}

int estimate_positive_degree(const Vec& svals, double tau_rank) {
  if (svals.size() == 0 || !(svals[0] > 0.0)) return 0;
  int count = 0;
  for (Eigen::Index k = 0; k < svals.size(); ++k)
    if (svals[k] >= tau_rank * svals[0]) ++count;
  return count;
}

DegreeReport degree_report(const Mat& P, double tau_rank) {
  DegreeReport out;
  out.singular_values = singular_values(P);
  out.threshold = tau_rank;
  out.estimated_degree = estimate_positive_degree(out.singular_values, tau_rank);
  return out;
}

namespace {

/// Groups conjugate-closed values into clusters of one (real) or two (pair).
/// `items` are (index, value); throws when a complex value has no partner.
std::vector<std::vector<int>> conjugate_clusters(const std::vector<Complex>& values, double tol) {
  const int m = static_cast<int>(values.size());
  std::vector<bool> used(m, false);
  std::vector<std::vector<int>> clusters;
  for (int i = 0; i < m; ++i) {
    if (used[i]) continue;
    used[i] = true;
    const Complex v = values[i];
    if (std::abs(v.imag()) <= tol * std::max(1.0, std::abs(v))) {
      clusters.push_back({i});
      continue;
    }
    int best = -1;
    double best_dist = tol * std::max(1.0, std::abs(v)) * 1e3;
    for (int j = 0; j < m; ++j) {
      if (used[j]) continue;
      const double dist = std::abs(values[j] - std::conj(v));
      if (dist <= best_dist) {
        best = j;
        best_dist = dist;
      }
    }
    if (best < 0) throw InvalidInput("values are not closed under conjugation");
    used[best] = true;
    clusters.push_back({i, best});
  }
  return clusters;
}

/// Clusters ordered by modulus descending, then |arg| ascending.
std::vector<std::vector<int>> ranked_clusters(const std::vector<Complex>& values) {
  auto clusters = conjugate_clusters(values, 1e-9);
  auto key = [&](const std::vector<int>& c) {
    double mod = 0.0, arg = 0.0;
    for (int i : c) {
      mod += std::abs(values[i]);
      arg += std::abs(std::arg(values[i]));
    }
    return std::pair{-mod / static_cast<double>(c.size()), arg / static_cast<double>(c.size())};
  };
  std::stable_sort(clusters.begin(), clusters.end(), [&](const auto& x, const auto& y) {
    const auto kx = key(x), ky = key(y);
    if (std::abs(kx.first - ky.first) > 1e-9) return kx.first < ky.first;
    return kx.second < ky.second - 1e-12;
  });
  return clusters;
}

/// Takes whole clusters until `m` members are chosen.
std::vector<int> take_clusters(const std::vector<std::vector<int>>& clusters, int m, const char* what) {
  std::vector<int> out;
  for (const auto& c : clusters) {
    if (static_cast<int>(out.size()) == m) break;
    if (static_cast<int>(out.size() + c.size()) > m) {
      throw InvalidInput(std::string("selecting ") + std::to_string(m) + " " + what +
                         " would split a conjugate pair");
    }
    out.insert(out.end(), c.begin(), c.end());
  }
  if (static_cast<int>(out.size()) != m) throw InvalidInput(std::string("not enough ") + what);
  return out;
}

}  // namespace

std::vector<Complex> dominant_zeros(const CVec& zeros, int m) {
  std::vector<Complex> values(zeros.data(), zeros.data() + zeros.size());
  const auto picked = take_clusters(ranked_clusters(values), m, "spectral zeros");
  std::vector<Complex> out;
  for (int i : picked) out.push_back(values[i]);
  return out;
}

std::vector<int> select_reduction_nodes(const InterpolationProblem& problem, int m) {
  std::vector<Complex> finite;
  for (int k = 1; k <= problem.order(); ++k) finite.push_back(problem.nodes[k].value());
  auto picked = take_clusters(ranked_clusters(finite), m, "interpolation nodes");
  std::vector<int> out{0};
  for (int i : picked) out.push_back(i + 1);
  std::sort(out.begin(), out.end());
  return out;
}

ReducedModel reduce_model(const InterpolationProblem& problem, const Solution& solution, int m,
                          const ReductionSpec& spec, const ContinuationOptions& opts) {
  const int n = problem.order();
  if (m < 1 || m > n) throw InvalidInput("target degree must lie in [1, order]");
  if (m == n) return {problem, solution};

  const CVec zeros = roots(solution.sigma);
  const auto kept = dominant_zeros(zeros, m);

  std::vector<int> nodes = spec.node_indices.empty() ? select_reduction_nodes(problem, m) : spec.node_indices;
  if (static_cast<int>(nodes.size()) != m + 1 || nodes.front() != 0) {
    throw InvalidInput("reduction must keep the infinity node plus exactly m other nodes");
  }
  InterpolationProblem reduced;
  reduced.sigma = MonicPolynomial::from_roots(kept);
  for (int k : nodes) {
    if (k < 0 || k > n) throw InvalidInput("reduction node index out of range");
    reduced.nodes.push_back(problem.nodes[k]);
    reduced.values.push_back(problem.values[k]);
  }
  Solution reduced_solution = solve(reduced, opts);
  return {std::move(reduced), std::move(reduced_solution)};
}

namespace {

// |p(e^{i theta})|^2 in extended precision; |a| is tiny next to near-circle poles.
long double norm_on_circle(const MonicPolynomial& p, long double theta) {
  const std::complex<long double> z = std::polar(1.0L, theta);
  std::complex<long double> acc = 0.0L;
  for (int i = 0; i <= p.degree(); ++i) acc = acc * z + static_cast<long double>(p[i]);
  return std::norm(acc);
}

}  // namespace

double spectral_density(const Solution& solution, double theta) {
  const long double rho2 = static_cast<long double>(solution.rho) * solution.rho;
  return static_cast<double>(solution.scale * rho2 * norm_on_circle(solution.sigma, theta) /
                             norm_on_circle(solution.a, theta));
}

Vec spectral_density(const Solution& solution, std::span<const double> thetas) {
  return kernels::spectral_density_parallel(solution, thetas);
}

std::vector<double> uniform_grid(int count) {
  std::vector<double> out(count);
  for (int k = 0; k < count; ++k) out[k] = -std::numbers::pi + 2.0 * std::numbers::pi * k / count;
  return out;
}

double log_spectral_deviation(const Vec& phi_ref, const Vec& phi) {
  if (phi_ref.size() != phi.size()) throw InvalidInput("spectral grids differ in length");
  const Vec log_ref = phi_ref.array().log();
  const Vec log_other = phi.array().log();
  const double denom = log_ref.norm();
  return denom > 0.0 ? (log_other - log_ref).norm() / denom : (log_other - log_ref).norm();
}

CVec sorted_roots(const CVec& r) {
  std::vector<Complex> v(r.data(), r.data() + r.size());
  std::sort(v.begin(), v.end(), [](Complex x, Complex y) {
    if (std::arg(x) != std::arg(y)) return std::arg(x) < std::arg(y);
    return std::abs(x) < std::abs(y);
  });
  return Eigen::Map<const CVec>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace nevpick
