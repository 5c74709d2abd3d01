#pragma once

// Random well-posed interpolation problems for property tests.

#include <numbers>
#include <random>
#include <vector>

#include "nevpick/ingestion.hpp"

namespace nevpick::testing {

/// Conjugate-closed root set of the given size with moduli in [rmin, rmax].
inline std::vector<Complex> random_roots(std::mt19937_64& rng, int count, double rmin, double rmax) {
  std::uniform_real_distribution<double> radius(rmin, rmax);
  std::uniform_real_distribution<double> angle(0.15, std::numbers::pi - 0.15);
  std::uniform_real_distribution<double> sign(-1.0, 1.0);
  std::vector<Complex> out;
  if (count % 2 == 1) out.emplace_back(radius(rng) * (sign(rng) < 0 ? -1.0 : 1.0), 0.0);
  while (static_cast<int>(out.size()) < count) {
    const Complex r = std::polar(radius(rng), angle(rng));
    out.push_back(r);
    out.push_back(std::conj(r));
  }
  return out;
}

inline MonicPolynomial random_schur(std::mt19937_64& rng, int degree, double rmin = 0.1, double rmax = 0.9) {
  const auto r = random_roots(rng, degree, rmin, rmax);
  return MonicPolynomial::from_roots(r);
}

/// Infinity plus n finite nodes 1/p_k with conjugate-closed poles p_k.
inline std::vector<Node> random_nodes(std::mt19937_64& rng, int n) {
  std::vector<Complex> poles{0.0};
  for (const Complex p : random_roots(rng, n, 0.2, 0.8)) poles.push_back(p);
  return nodes_from_poles(poles);
}

struct RandomProblem {
  InterpolationProblem problem;
  MonicPolynomial true_sigma = MonicPolynomial::monomial(0);
  MonicPolynomial true_a = MonicPolynomial::monomial(0);
};

/// Values of a random strictly positive-real f of degree n at random nodes,
/// scaled by a random positive factor, with an independent random sigma.
inline RandomProblem random_problem(std::mt19937_64& rng, int n) {
  RandomProblem out;
  out.true_sigma = random_schur(rng, n);
  out.true_a = random_schur(rng, n);
  const auto nodes = random_nodes(rng, n);
  std::vector<Complex> poles;
  for (const auto& z : nodes) poles.push_back(z.inverse());
  std::uniform_real_distribution<double> scale(0.5, 3.0);
  auto values = exact_values(out.true_sigma, out.true_a, poles);
  const double s = scale(rng);
  for (auto& w : values) w *= s;
  out.problem = InterpolationProblem{nodes, std::move(values), random_schur(rng, n)};
  return out;
}

}  // namespace nevpick::testing
