#pragma once

// Polynomial and structured-matrix primitives.
//
// Coefficient vectors are stored in descending powers throughout:
// (c0, c1, ..., cn) represents c0*z^n + c1*z^(n-1) + ... + cn.

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace nevpick {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

/// General real coefficient vector of length n+1; the leading entry may be 0.
using FullVector = Eigen::VectorXd;

/// Raised when a numerical routine cannot produce a trustworthy result.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised for inputs that violate a documented precondition.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Real monic polynomial z^n + c1 z^(n-1) + ... + cn.
class MonicPolynomial {
 public:
  /// `coeffs` must be non-empty with coeffs[0] == 1 exactly.
  explicit MonicPolynomial(Vec coeffs);

  /// z^n.
  static MonicPolynomial monomial(int degree);

  /// Product of (z - r) over `roots`. Complex roots must come in conjugate
  /// pairs; throws InvalidInput when the product is not real to 1e-9.
  static MonicPolynomial from_roots(std::span<const Complex> roots);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Vec& coeffs() const { return coeffs_; }
  double operator[](int i) const { return coeffs_[i]; }

  /// (c1, ..., cn), the vector form used by the companion layout.
  Vec tail() const { return coeffs_.tail(degree()); }

  MonicPolynomial operator*(const MonicPolynomial& other) const;

 private:
  Vec coeffs_;
};

/// Companion form of sigma: first column -sigma_vec, identity on the
/// superdiagonal block, zeros elsewhere. Its characteristic polynomial is sigma.
struct CompanionData {
  Mat gamma;
  Vec h;
  Vec sigma_vec;
};

struct RootReport {
  CVec roots;
  bool is_schur = false;
};

/// Horner evaluation. Never pass the point at infinity here.
Complex eval_poly(const FullVector& coeffs, Complex z);
Complex eval_poly(const MonicPolynomial& poly, Complex z);

/// Roots via companion-matrix eigenvalues; `is_schur` iff max |root| < 1 - eps_schur.
RootReport roots_and_schur(const MonicPolynomial& poly, double eps_schur = 0.0);

/// Roots only. Degree 0 gives an empty vector.
CVec roots(const MonicPolynomial& poly);

CompanionData companion(const MonicPolynomial& sigma);

/// d_k = sum_i sigma_i sigma_{i+k}, k = 0..n-1 (sigma_0 = 1): the z^k
/// coefficients of sigma(z) sigma(1/z).
Vec build_d(const MonicPolynomial& sigma);

/// S(x) = H(x) + Tu(x): H is the Hankel matrix with row i equal to
/// (x_i, ..., x_n, 0, ...), Tu the upper-triangular Toeplitz matrix with first
/// row x. S(x) y holds the z^0..z^n coefficients of x(z)y(1/z) + y(z)x(1/z).
Mat build_S(const FullVector& x);

/// Same coefficients as build_S(x) * y, computed by direct convolution.
Vec sym_coeffs(const FullVector& x, const FullVector& y);

/// [1; v] as a full coefficient vector.
FullVector with_leading_one(const Vec& v);

}  // namespace nevpick
