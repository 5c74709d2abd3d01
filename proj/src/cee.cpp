#include "nevpick/cee.hpp"

#include <cmath>

#include <fmt/format.h>

namespace nevpick {

CMat build_V(std::span<const Node> nodes) {
  const auto m = static_cast<Eigen::Index>(nodes.size());
  CMat V = CMat::Zero(m, m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const Complex zinv = nodes[k].inverse();
    Complex power = 1.0;
    for (Eigen::Index j = 0; j < m; ++j) {
      V(k, j) = power;
      power *= zinv;
    }
  }
  return V;
}

CVec build_W(std::span<const Complex> values, double nu) {
  CVec w(static_cast<Eigen::Index>(values.size()));
  for (std::size_t k = 0; k < values.size(); ++k) w[k] = 0.5 + nu * (values[k] - 0.5);
  return w;
}

Mat build_T(const CMat& V, const CVec& W) {
  Eigen::PartialPivLU<CMat> lu(V);
  // V^-1 (W - I/2) V: exactly zero when W = I/2.
  const CVec shifted = W.array() - 0.5;
  const CMat t = lu.solve(shifted.asDiagonal() * V);
  const double imag = t.imag().cwiseAbs().maxCoeff();
  if (imag > kTolReal) {
    throw NumericalError(fmt::format("T has imaginary residue {:.3e}; data are not conjugate-symmetric", imag));
  }
  return t.real();
}

namespace {

UPair split_bottom_rows(const Mat& m) {
  const Eigen::Index n = m.rows() - 1;
  return {m.block(1, 0, n, 1), m.block(1, 1, n, n)};
}

Eigen::PartialPivLU<Mat> factor_I_plus_T(const Mat& T) {
  const Mat shifted = Mat::Identity(T.rows(), T.cols()) + T;
  Eigen::PartialPivLU<Mat> lu(shifted);
  // PartialPivLU does not report singularity; check the pivots.
  const double min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  if (!(min_pivot > 1e-14 * std::max(1.0, shifted.cwiseAbs().maxCoeff()))) {
    throw NumericalError("I + T is singular; the interpolation data are corrupt");
  }
  return lu;
}

}  // namespace

UPair compute_uU(const Mat& T) {
  const auto lu = factor_I_plus_T(T);
  return split_bottom_rows(lu.solve(T));
}

UPair compute_uU_dot(const Mat& T, const Mat& T_dot) {
  const Mat inv = factor_I_plus_T(T).inverse();
  return split_bottom_rows(inv * T_dot * inv);
}

UPair uU_from_covariance(const Vec& c) {
  const Eigen::Index n = c.size() - 1;
  if (n < 0 || c[0] != 1.0) throw InvalidInput("covariance sequence must start with c_0 = 1");
  Mat toeplitz(n + 1, n + 1);
  for (Eigen::Index i = 0; i <= n; ++i)
    for (Eigen::Index j = 0; j <= n; ++j) toeplitz(i, j) = c[std::abs(i - j)];
  Eigen::LLT<Mat> llt(toeplitz);
  if (llt.info() != Eigen::Success) throw InvalidInput("Toeplitz matrix of the covariances is not positive definite");

  // 1 / (1 + c_1 x + ... + c_n x^n) = sum s_t x^t, u_t = -s_t.
  Vec s = Vec::Zero(n + 1);
  s[0] = 1.0;
  for (Eigen::Index t = 1; t <= n; ++t) {
    double acc = 0.0;
    for (Eigen::Index i = 1; i <= t; ++i) acc += c[i] * s[t - i];
    s[t] = -acc;
  }
  UPair out{-s.tail(n), Mat::Zero(n, n)};
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < i; ++j) out.U(i, j) = out.u[i - j - 1];
  return out;
}

CeeMatrices build_cee_matrices(const InterpolationProblem& normalized) {
  if (normalized.values.empty() || normalized.values[0] != Complex(0.5)) {
    throw InvalidInput("CEE matrices need normalised data with w_0 = 1/2");
  }
  CeeMatrices out;
  out.V = build_V(normalized.nodes);
  out.W_target = build_W(normalized.values, 1.0);
  out.T_dot = build_T(out.V, out.W_target);
  Eigen::JacobiSVD<CMat> svd(out.V);
  const Vec& sv = svd.singularValues();
  out.v_condition = sv[sv.size() - 1] > 0.0 ? sv[0] / sv[sv.size() - 1] : std::numeric_limits<double>::infinity();
  if (!std::isfinite(out.v_condition)) throw NumericalError("V is singular (coincident nodes)");
  return out;
}

OperatorPair operator_pair(const CeeMatrices& cee, double nu) {
  const Mat T = nu * cee.T_dot;
  const Mat inv = factor_I_plus_T(T).inverse();
  const auto value = split_bottom_rows(inv * T);
  const auto dot = split_bottom_rows(inv * cee.T_dot * inv);
  return {nu, value.u, value.U, dot.u, dot.U};
}

Vec g_of_p(const OperatorPair& pair, const CompanionData& comp, const Vec& p) {
  return pair.u + pair.U * (comp.sigma_vec + comp.gamma * p);
}

Vec g_of_p(const UPair& pair, const CompanionData& comp, const Vec& p) {
  return pair.u + pair.U * (comp.sigma_vec + comp.gamma * p);
}

double cee_residual(const Mat& P, const CompanionData& comp, const Vec& g) {
  const Vec ph = P * comp.h;
  const Mat inner = P - ph * ph.transpose();
  return (P - comp.gamma * inner * comp.gamma.transpose() - g * g.transpose()).norm();
}

Mat solve_stein(const Mat& gamma, const Mat& rhs) {
  const Eigen::Index n = gamma.rows();
  // Column-major vec: vec(G X G') = (G kron G) vec(X).
  Mat op = Mat::Identity(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      op.block(i * n, j * n, n, n) -= gamma(i, j) * gamma;
  Eigen::PartialPivLU<Mat> lu(op);
  const Vec x = lu.solve(Eigen::Map<const Vec>(rhs.data(), n * n));
  if (!x.allFinite()) throw NumericalError("Stein equation solve failed");
  return Eigen::Map<const Mat>(x.data(), n, n);
}

Mat recover_P(const CompanionData& comp, const Vec& p, const Vec& g) {
  const Vec gp = comp.gamma * p;
  const Mat rhs = -gp * gp.transpose() + g * g.transpose();
  Mat P = solve_stein(comp.gamma, rhs);
  const double scale = std::max(1.0, P.cwiseAbs().maxCoeff());
  const double asym = (P - P.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * scale) throw NumericalError(fmt::format("recovered P is not symmetric ({:.3e})", asym));
  P = 0.5 * (P + P.transpose()).eval();
  const double ph_err = (P * comp.h - p).cwiseAbs().maxCoeff();
  if (ph_err > 1e-8 * std::max(1.0, p.cwiseAbs().maxCoeff())) {
    throw NumericalError(fmt::format("recovered P gives |Ph - p| = {:.3e}; p is off the trajectory", ph_err));
  }
  Eigen::SelfAdjointEigenSolver<Mat> eig(P, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -1e-8 * scale) {
    throw NumericalError(fmt::format("recovered P is indefinite (min eigenvalue {:.3e})", eig.eigenvalues().minCoeff()));
  }
  if (!(comp.h.dot(P * comp.h) < 1.0)) throw NumericalError("recovered P violates h'Ph < 1");
  return P;
}

}  // namespace nevpick
