#pragma once

// Homotopy continuation for the Nevanlinna-Pick CEE.
//
// With a(p) = (I - U)(Gamma p + sigma) - u and b(p) = (I + U)(Gamma p + sigma) + u,
// the homotopy map is
//
//   G(p, nu) = E S([1; a(p)]) [1; b(p)] - 2 (1 - h'p) d,      E = [I_n 0].
//
// G(0, 0) = 0, and the path p(nu) from nu = 0 to nu = 1 is regular. It is
// followed with an Euler predictor along p' = -(dG/dp)^-1 dG/dnu and a Newton
// corrector at fixed nu.

#include <optional>
#include <vector>

#include "nevpick/cee.hpp"
#include "nevpick/polyalg.hpp"
#include "nevpick/problem.hpp"

namespace nevpick {

struct ContinuationOptions {
  double mu = 1e-4;              // predictor band on |e_1' G(p_hat, nu + dnu)|
  double tol_corrector = 1e-12;  // absolute stop on ||G||_inf
  int max_newton_iters = 25;
  double step_init = 0.1;
  double step_max = 0.2;
  double step_grow = 1.5;
  double step_min = 1e-8;
  /// Reject steps whose a(z) leaves the open unit disk.
  bool require_schur_a = true;
  /// Extra Newton steps at nu = 1 past tol_corrector, kept while ||G|| falls.
  /// Near-circle poles amplify the endpoint residual in f.
  int refine_iters = 3;
};

/// Shared, read-only data for one normalised problem.
class HomotopyContext {
 public:
  explicit HomotopyContext(const InterpolationProblem& normalized);

  int order() const { return order_; }
  const CompanionData& companion() const { return companion_; }
  const Vec& d() const { return d_; }
  const CeeMatrices& cee() const { return cee_; }
  const MonicPolynomial& sigma() const { return sigma_; }

  /// True when W = I/2, so the path is constant at p = 0.
  bool is_central() const { return central_; }

  OperatorPair pair_at(double nu) const { return operator_pair(cee_, nu); }

 private:
  int order_;
  MonicPolynomial sigma_;
  CompanionData companion_;
  Vec d_;
  CeeMatrices cee_;
  bool central_;
};

struct ContinuationState {
  double nu = 0.0;
  Vec p;
  double step = 0.0;  // step that produced this state (0 for the start)
  int corrector_iters = 0;
  double residual = 0.0;  // ||G(p, nu)||_inf
  CVec poles;             // roots of a(p) at nu
};

struct CorrectorResult {
  Vec p;
  int iters = 0;
  bool converged = false;
  std::vector<double> residuals;  // ||G||_inf before each Newton update, plus the final one
};

struct PathStats {
  int accepted = 0;
  int rejected_band = 0;
  int rejected_corrector = 0;
  int rejected_poles = 0;
  int rejected_singular = 0;
};

struct Diagnostics {
  std::vector<double> interpolation_residuals;  // |f(z_k) - w_k| per node, original scale
  double max_interpolation_residual = 0.0;
  CVec poles;           // roots of a
  CVec zeros;           // roots of b (zeros of f)
  CVec spectral_zeros;  // roots of sigma
  double cee_residual = 0.0;
  Vec singular_values;
  double v_condition = 0.0;
  PathStats path;
};

/// Interpolant f(z) = scale * b(z) / (2 a(z)) with spectral factor rho sigma / a.
struct Solution {
  MonicPolynomial a = MonicPolynomial::monomial(0);
  MonicPolynomial b = MonicPolynomial::monomial(0);
  MonicPolynomial sigma = MonicPolynomial::monomial(0);
  double rho = 1.0;  // sqrt(1 - h'Ph), normalised scale
  Mat P;
  Vec p;
  double scale = 1.0;  // 2 w_0 of the original data
  std::vector<ContinuationState> trajectory;
  Diagnostics diagnostics;

  int order() const { return a.degree(); }
  Complex interpolant(const Node& z) const;
  Complex interpolant(Complex z) const;
};

class PathFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Validation failure carrying every violation found.
class ValidationFailure : public InvalidInput {
 public:
  explicit ValidationFailure(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

struct ABPair {
  MonicPolynomial a;
  MonicPolynomial b;
};

/// a = (I - U)(Gamma p + sigma) - u, b = (I + U)(Gamma p + sigma) + u, made monic.
ABPair ab_of_p(const OperatorPair& pair, const CompanionData& comp, const Vec& p);

Vec eval_G(const Vec& p, const OperatorPair& pair, const HomotopyContext& ctx);
Vec eval_G(const Vec& p, double nu, const HomotopyContext& ctx);

/// dG/dp = -2 E S([0; U(Gamma p + sigma) + u]) [0; U Gamma]
///         + 2 E S([1; Gamma p + sigma]) [0; Gamma] + 2 d h'.
Mat jac_G(const Vec& p, const OperatorPair& pair, const HomotopyContext& ctx);
Mat jac_G(const Vec& p, double nu, const HomotopyContext& ctx);

/// dG/dnu = -2 E S([0; U(Gamma p + sigma) + u]) [0; U_dot(Gamma p + sigma) + u_dot].
Vec dG_dnu(const Vec& p, const OperatorPair& pair, const HomotopyContext& ctx);
Vec dG_dnu(const Vec& p, double nu, const HomotopyContext& ctx);

/// Tangent p' = -(dG/dp)^-1 dG/dnu; nullopt when the Jacobian is singular.
std::optional<Vec> tangent(const Vec& p, const OperatorPair& pair, const HomotopyContext& ctx);

/// Euler step p + step * p'; nullopt when the Jacobian is singular.
std::optional<Vec> predictor(const ContinuationState& state, double step, const HomotopyContext& ctx);

/// Newton iteration on G(., nu) = 0 from p_hat.
CorrectorResult corrector(const Vec& p_hat, double nu, const HomotopyContext& ctx,
                          const ContinuationOptions& opts = {});

/// Follows the path on a normalised problem and returns the accepted states.
/// Throws PathFailure when the step underflows opts.step_min.
std::vector<ContinuationState> follow_path(const HomotopyContext& ctx, const ContinuationOptions& opts,
                                           PathStats* stats = nullptr);

/// Validates, normalises, follows the path, recovers P and fills diagnostics.
/// Throws ValidationFailure or PathFailure.
Solution solve(const InterpolationProblem& problem, const ContinuationOptions& opts = {});

}  // namespace nevpick
