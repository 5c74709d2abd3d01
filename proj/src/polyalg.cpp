#include "nevpick/polyalg.hpp"

#include <cmath>
#include <string>

namespace nevpick {

MonicPolynomial::MonicPolynomial(Vec coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() == 0) throw InvalidInput("monic polynomial needs at least one coefficient");
  if (coeffs_[0] != 1.0) {
    throw InvalidInput("monic polynomial must have leading coefficient 1, got " +
                       std::to_string(coeffs_[0]));
  }
}

MonicPolynomial MonicPolynomial::monomial(int degree) {
  if (degree < 0) throw InvalidInput("negative degree");
  Vec c = Vec::Zero(degree + 1);
  c[0] = 1.0;
  return MonicPolynomial(std::move(c));
}

MonicPolynomial MonicPolynomial::from_roots(std::span<const Complex> roots) {
  CVec c = CVec::Zero(static_cast<Eigen::Index>(roots.size()) + 1);
  c[0] = 1.0;
  Eigen::Index len = 1;
  for (const Complex r : roots) {
    for (Eigen::Index i = len; i >= 1; --i) c[i] -= r * c[i - 1];
    ++len;
  }
  Vec out(c.size());
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    if (std::abs(c[i].imag()) > 1e-9 * std::max(1.0, std::abs(c[i]))) {
      throw InvalidInput("roots are not closed under conjugation");
    }
    out[i] = c[i].real();
  }
  out[0] = 1.0;
  return MonicPolynomial(std::move(out));
}

MonicPolynomial MonicPolynomial::operator*(const MonicPolynomial& other) const {
  const int n = degree(), m = other.degree();
  Vec c = Vec::Zero(n + m + 1);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= m; ++j) c[i + j] += coeffs_[i] * other.coeffs_[j];
  c[0] = 1.0;
  return MonicPolynomial(std::move(c));
}

Complex eval_poly(const FullVector& coeffs, Complex z) {
  Complex acc = 0.0;
  for (Eigen::Index i = 0; i < coeffs.size(); ++i) acc = acc * z + coeffs[i];
  return acc;
}

Complex eval_poly(const MonicPolynomial& poly, Complex z) { return eval_poly(poly.coeffs(), z); }

CompanionData companion(const MonicPolynomial& sigma) {
  const int n = sigma.degree();
  if (n < 1) throw InvalidInput("companion form needs degree >= 1");
  CompanionData out;
  out.sigma_vec = sigma.tail();
  out.gamma = Mat::Zero(n, n);
  out.gamma.col(0) = -out.sigma_vec;
  if (n > 1) out.gamma.topRightCorner(n - 1, n - 1).setIdentity();
  out.h = Vec::Zero(n);
  out.h[0] = 1.0;
  return out;
}

CVec roots(const MonicPolynomial& poly) {
  if (poly.degree() == 0) return CVec(0);
  const Mat gamma = companion(poly).gamma;
  Eigen::EigenSolver<Mat> solver(gamma, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw NumericalError("companion eigenvalue solver failed");
  return solver.eigenvalues();
}

RootReport roots_and_schur(const MonicPolynomial& poly, double eps_schur) {
  if (poly.degree() < 1) throw InvalidInput("root finding needs degree >= 1");
  RootReport out;
  out.roots = roots(poly);
  double max_mod = 0.0;
  for (Eigen::Index i = 0; i < out.roots.size(); ++i) max_mod = std::max(max_mod, std::abs(out.roots[i]));
  out.is_schur = max_mod < 1.0 - eps_schur;
  return out;
}

Vec build_d(const MonicPolynomial& sigma) {
  const int n = sigma.degree();
  const Vec& s = sigma.coeffs();
  Vec d = Vec::Zero(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i + k <= n; ++i) d[k] += s[i] * s[i + k];
  return d;
}

Mat build_S(const FullVector& x) {
  const Eigen::Index m = x.size();
  Mat s = Mat::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; i + j < m; ++j) s(i, j) += x[i + j];
    for (Eigen::Index j = i; j < m; ++j) s(i, j) += x[j - i];
  }
  return s;
}

Vec sym_coeffs(const FullVector& x, const FullVector& y) {
  if (x.size() != y.size()) throw InvalidInput("sym_coeffs: length mismatch");
  const Eigen::Index m = x.size();
  // x(z) y(1/z) = sum_{i,j} x_i y_j z^(j-i); keep nonnegative powers.
  Vec out = Vec::Zero(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i; j < m; ++j) {
      out[j - i] += x[i] * y[j];
      out[j - i] += y[i] * x[j];
    }
  }
  return out;
}

FullVector with_leading_one(const Vec& v) {
  FullVector out(v.size() + 1);
  out[0] = 1.0;
  out.tail(v.size()) = v;
  return out;
}

}  // namespace nevpick
