#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nevpick/polyalg.hpp"

namespace nevpick {

/// Interpolation node in the exterior of the unit disk. The point at infinity
/// is a dedicated sentinel; every formula uses 1/z = 0 there.
class Node {
 public:
  static Node infinity() { return Node(); }
  static Node finite(Complex z) { return Node(z); }

  bool is_infinity() const { return !value_.has_value(); }
  /// Throws InvalidInput for the point at infinity.
  Complex value() const;
  /// 1/z, exactly 0 at infinity.
  Complex inverse() const { return value_ ? 1.0 / *value_ : Complex(0.0); }

  friend bool operator==(const Node&, const Node&) = default;

 private:
  Node() = default;
  explicit Node(Complex z) : value_(z) {}
  std::optional<Complex> value_;
};

/// Nodes z_0..z_n (z_0 = infinity), values w_0..w_n and the spectral-zero
/// polynomial sigma of degree n.
struct InterpolationProblem {
  std::vector<Node> nodes;
  std::vector<Complex> values;
  MonicPolynomial sigma = MonicPolynomial::monomial(0);

  int order() const { return static_cast<int>(nodes.size()) - 1; }
};

enum class ViolationKind {
  kSizeMismatch,
  kEmpty,
  kDegreeMismatch,
  kInfinityNotFirst,
  kDuplicateNode,
  kOutsideDomain,
  kConjugateAsymmetry,
  kNonRealW0,
  kNonPositiveRealPart,
  kSigmaNotSchur,
  kPickNotPositiveDefinite,
};

std::string to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  int index = -1;  // offending node/value index, -1 when global
  std::string message;
};

/// Every structural invariant plus Pick positive-definiteness. Empty = valid.
std::vector<Violation> validate(const InterpolationProblem& problem);

/// Structural checks only (everything except Pick positivity and sigma).
std::vector<Violation> validate_structure(const InterpolationProblem& problem);

/// Entry (k,l) = (w_k + conj(w_l)) / (1 - conj(1/z_l) / z_k), with 1/z = 0 at infinity.
CMat pick_matrix(const InterpolationProblem& problem);

/// Minimum eigenvalue > rel_tol * max eigenvalue. Throws InvalidInput when m
/// is not Hermitian within 1e-10.
bool is_positive_definite(const CMat& m, double rel_tol = 1e-12);

/// Index of the conjugate partner of each node (itself for real nodes and
/// infinity); -1 when the partner is missing.
std::vector<int> conjugate_partners(std::span<const Node> nodes, double tol = 1e-12);

struct NormalizedProblem {
  InterpolationProblem problem;  // values[0] == 0.5
  double scale = 1.0;            // 2 * w_0 of the original problem
};

/// Divides every value by 2 w_0. Throws InvalidInput when w_0 is not real and positive.
NormalizedProblem normalize(const InterpolationProblem& problem);
InterpolationProblem denormalize(const NormalizedProblem& normalized);

}  // namespace nevpick
