#include "nevpick/problem.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace nevpick {

Complex Node::value() const {
  if (!value_) throw InvalidInput("the point at infinity has no finite value");
  return *value_;
}

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kSizeMismatch: return "size_mismatch";
    case ViolationKind::kEmpty: return "empty";
    case ViolationKind::kDegreeMismatch: return "degree_mismatch";
    case ViolationKind::kInfinityNotFirst: return "infinity_not_first";
    case ViolationKind::kDuplicateNode: return "duplicate_node";
    case ViolationKind::kOutsideDomain: return "outside_domain";
    case ViolationKind::kConjugateAsymmetry: return "conjugate_asymmetry";
    case ViolationKind::kNonRealW0: return "nonreal_w0";
    case ViolationKind::kNonPositiveRealPart: return "nonpositive_real_part";
    case ViolationKind::kSigmaNotSchur: return "sigma_not_schur";
    case ViolationKind::kPickNotPositiveDefinite: return "pick_not_positive_definite";
  }
  return "unknown";
}

namespace {

bool close(Complex a, Complex b, double tol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

}  // namespace

std::vector<int> conjugate_partners(std::span<const Node> nodes, double tol) {
  const int m = static_cast<int>(nodes.size());
  std::vector<int> partner(m, -1);
  for (int k = 0; k < m; ++k) {
    if (nodes[k].is_infinity()) {
      partner[k] = k;
      continue;
    }
    const Complex z = nodes[k].value();
    if (std::abs(z.imag()) <= tol * std::max(1.0, std::abs(z))) {
      partner[k] = k;
      continue;
    }
    for (int l = 0; l < m; ++l) {
      if (l == k || nodes[l].is_infinity()) continue;
      if (close(nodes[l].value(), std::conj(z), tol)) {
        partner[k] = l;
        break;
      }
    }
  }
  return partner;
}

std::vector<Violation> validate_structure(const InterpolationProblem& problem) {
  std::vector<Violation> out;
  const auto& nodes = problem.nodes;
  const auto& values = problem.values;
  if (nodes.empty()) {
    out.push_back({ViolationKind::kEmpty, -1, "problem has no nodes"});
    return out;
  }
  if (nodes.size() != values.size()) {
    out.push_back({ViolationKind::kSizeMismatch, -1,
                   fmt::format("{} nodes but {} values", nodes.size(), values.size())});
    return out;
  }
  const int n = problem.order();
  if (problem.sigma.degree() != n) {
    out.push_back({ViolationKind::kDegreeMismatch, -1,
                   fmt::format("sigma has degree {} but the problem has order {}",
                               problem.sigma.degree(), n)});
  }
  if (!nodes[0].is_infinity()) {
    out.push_back({ViolationKind::kInfinityNotFirst, 0, "node 0 must be the point at infinity"});
  }
  for (int k = 1; k <= n; ++k) {
    if (nodes[k].is_infinity()) {
      out.push_back({ViolationKind::kInfinityNotFirst, k, fmt::format("node {} is a second point at infinity", k)});
    } else if (!(std::abs(nodes[k].value()) > 1.0)) {
      out.push_back({ViolationKind::kOutsideDomain, k,
                     fmt::format("node {} has modulus {} (must exceed 1)", k, std::abs(nodes[k].value()))});
    }
  }
  for (int k = 0; k <= n; ++k) {
    for (int l = k + 1; l <= n; ++l) {
      const bool dup = nodes[k].is_infinity() ? nodes[l].is_infinity()
                       : !nodes[l].is_infinity() && close(nodes[k].value(), nodes[l].value(), 1e-12);
      if (dup) out.push_back({ViolationKind::kDuplicateNode, l, fmt::format("node {} duplicates node {}", l, k)});
    }
  }
  if (std::abs(values[0].imag()) > 1e-12 * std::max(1.0, std::abs(values[0]))) {
    out.push_back({ViolationKind::kNonRealW0, 0, "w_0 must be real"});
  }
  for (int k = 0; k <= n; ++k) {
    if (!(values[k].real() > 0.0)) {
      out.push_back({ViolationKind::kNonPositiveRealPart, k,
                     fmt::format("value {} has real part {} (must be positive)", k, values[k].real())});
    }
  }
  const auto partner = conjugate_partners(nodes);
  for (int k = 1; k <= n; ++k) {
    if (partner[k] < 0) {
      out.push_back({ViolationKind::kConjugateAsymmetry, k, fmt::format("node {} has no conjugate partner", k)});
    } else if (partner[k] >= k && !close(values[partner[k]], std::conj(values[k]), 1e-12)) {
      // One report per pair.
      out.push_back({ViolationKind::kConjugateAsymmetry, k,
                     partner[k] == k ? fmt::format("real node {} carries a non-real value", k)
                                     : fmt::format("values {} and {} are not conjugate", k, partner[k])});
    }
  }
  return out;
}

std::vector<Violation> validate(const InterpolationProblem& problem) {
  auto out = validate_structure(problem);
  if (problem.sigma.degree() >= 1 && !roots_and_schur(problem.sigma).is_schur) {
    out.push_back({ViolationKind::kSigmaNotSchur, -1, "sigma has a root on or outside the unit circle"});
  }
  const bool pick_checkable = std::none_of(out.begin(), out.end(), [](const Violation& v) {
    return v.kind == ViolationKind::kSizeMismatch || v.kind == ViolationKind::kEmpty ||
           v.kind == ViolationKind::kDuplicateNode || v.kind == ViolationKind::kOutsideDomain;
  });
  if (pick_checkable && !is_positive_definite(pick_matrix(problem))) {
    out.push_back({ViolationKind::kPickNotPositiveDefinite, -1, "Pick matrix is not positive definite"});
  }
  return out;
}

CMat pick_matrix(const InterpolationProblem& problem) {
  const auto m = static_cast<Eigen::Index>(problem.nodes.size());
  if (problem.values.size() != problem.nodes.size()) throw InvalidInput("pick_matrix: size mismatch");
  CMat pick(m, m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const Complex zk_inv = problem.nodes[k].inverse();
    for (Eigen::Index l = 0; l < m; ++l) {
      const Complex denom = 1.0 - zk_inv * std::conj(problem.nodes[l].inverse());
      if (std::abs(denom) == 0.0) throw InvalidInput("pick_matrix: coincident nodes on the unit circle");
      pick(k, l) = (problem.values[k] + std::conj(problem.values[l])) / denom;
    }
  }
  return pick;
}

bool is_positive_definite(const CMat& m, double rel_tol) {
  if (m.rows() != m.cols()) throw InvalidInput("is_positive_definite: matrix not square");
  if (m.size() == 0) return true;
  const double herm_err = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm_err > 1e-10 * std::max(1.0, m.cwiseAbs().maxCoeff())) {
    throw InvalidInput("is_positive_definite: matrix not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<CMat> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("Hermitian eigensolver failed");
  const Vec& ev = solver.eigenvalues();
  const double max_ev = ev.maxCoeff();
  return max_ev > 0.0 && ev.minCoeff() > rel_tol * max_ev;
}

NormalizedProblem normalize(const InterpolationProblem& problem) {
  if (problem.values.empty()) throw InvalidInput("normalize: no values");
  const Complex w0 = problem.values[0];
  if (w0.imag() != 0.0 && std::abs(w0.imag()) > 1e-12 * std::abs(w0)) throw InvalidInput("normalize: w_0 must be real");
  if (!(w0.real() > 0.0)) throw InvalidInput("normalize: w_0 must be positive");
  NormalizedProblem out{problem, 2.0 * w0.real()};
  for (auto& w : out.problem.values) w /= out.scale;
  out.problem.values[0] = 0.5;
  return out;
}

InterpolationProblem denormalize(const NormalizedProblem& normalized) {
  InterpolationProblem out = normalized.problem;
  for (auto& w : out.values) w *= normalized.scale;
  return out;
}

}  // namespace nevpick
