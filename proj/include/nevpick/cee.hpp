#pragma once

// Ingredients of the covariance extension equation (CEE) specialised to
// Nevanlinna-Pick data, and the CEE itself.
//
// For normalised data (w_0 = 1/2) the homotopy W(nu) = I/2 + nu (W - I/2)
// gives T(nu) = V^-1 W(nu) V - I/2 = nu * T_dot, and
//
//   [u U](nu) = [0 I_n] (I + T(nu))^-1 T(nu).
//
// With p = P h the CEE solution is characterised by
//
//   g = u + U sigma + U Gamma p,
//   P - Gamma P Gamma' = -Gamma p p' Gamma' + g g'.

#include <span>

#include "nevpick/polyalg.hpp"
#include "nevpick/problem.hpp"

namespace nevpick {

/// Imaginary parts of T below this are discarded; larger ones are an error.
inline constexpr double kTolReal = 1e-9;

/// (u, U) at nu together with their nu-derivatives.
struct OperatorPair {
  double nu = 0.0;
  Vec u;
  Mat U;
  Vec u_dot;
  Mat U_dot;
};

struct UPair {
  Vec u;
  Mat U;
};

struct CeeMatrices {
  CMat V;
  CVec W_target;
  Mat T_dot;  // V^-1 (W_target - I/2) V, real
  double v_condition = 0.0;
};

/// Row k is (1, 1/z_k, ..., 1/z_k^n), i.e. (z_k^n, ..., 1) scaled by z_k^-n;
/// the infinity row is e_1'. T is unchanged by any diagonal row scaling.
CMat build_V(std::span<const Node> nodes);

/// Diagonal of W(nu): 1/2 + nu (w_k - 1/2).
CVec build_W(std::span<const Complex> values, double nu);

/// T = V^-1 diag(W) V - I/2 as a real matrix. Throws NumericalError when the
/// imaginary residue exceeds kTolReal (broken conjugate symmetry).
Mat build_T(const CMat& V, const CVec& W);

/// u = column 0, U = columns 1..n of the bottom n rows of (I+T)^-1 T.
UPair compute_uU(const Mat& T);

/// Bottom rows of (I+T)^-1 T_dot (I+T)^-1, split the same way.
UPair compute_uU_dot(const Mat& T, const Mat& T_dot);

/// (u, U) for the rational covariance extension problem with covariances
/// c = (1, c_1, ..., c_n): z^n / (z^n + c_1 z^(n-1) + ... + c_n) = 1 - sum u_t z^-t,
/// U strictly lower-triangular Toeplitz in u. Throws InvalidInput when the
/// Toeplitz matrix of c is not positive definite or c_0 != 1.
UPair uU_from_covariance(const Vec& c);

/// Builds V, W and T_dot for a normalised problem (values[0] == 1/2).
CeeMatrices build_cee_matrices(const InterpolationProblem& normalized);

/// (u, U, u_dot, U_dot) at nu.
OperatorPair operator_pair(const CeeMatrices& cee, double nu);

/// g = u + U sigma + U Gamma p.
Vec g_of_p(const OperatorPair& pair, const CompanionData& comp, const Vec& p);
Vec g_of_p(const UPair& pair, const CompanionData& comp, const Vec& p);

/// Frobenius norm of P - Gamma (P - P h h' P) Gamma' - g g'.
double cee_residual(const Mat& P, const CompanionData& comp, const Vec& g);

/// Solution of the Stein equation P - Gamma P Gamma' = -Gamma p p' Gamma' + g g'
/// (dense vectorised solve). Checks symmetry, P h == p, positive
/// semidefiniteness and h' P h < 1; throws NumericalError when any fails.
Mat recover_P(const CompanionData& comp, const Vec& p, const Vec& g);

/// recover_P without the post-checks.
Mat solve_stein(const Mat& gamma, const Mat& rhs);

}  // namespace nevpick
