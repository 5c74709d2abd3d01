#include "nevpick/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace nevpick {

namespace {

/// Columns [0; M] for an n x n block M, as an (n+1) x n matrix.
Mat pad_top(const Mat& m) {
  Mat out = Mat::Zero(m.rows() + 1, m.cols());
  out.bottomRows(m.rows()) = m;
  return out;
}

FullVector with_leading_zero(const Vec& v) {
  FullVector out(v.size() + 1);
  out[0] = 0.0;
  out.tail(v.size()) = v;
  return out;
}

double inf_norm(const Vec& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

/// b(z) / a(z) evaluated through the reversed polynomials at x = 1/z, so the
/// point at infinity (x = 0) needs no special case. Extended precision keeps
/// the ratio accurate next to poles on the circle.
Complex ratio_at_inverse(const MonicPolynomial& num, const MonicPolynomial& den, Complex x) {
  using Wide = std::complex<long double>;
  const Wide xw(x.real(), x.imag());
  Wide top = 0.0L, bottom = 0.0L;
  for (int i = num.degree(); i >= 0; --i) top = top * xw + static_cast<long double>(num[i]);
  for (int i = den.degree(); i >= 0; --i) bottom = bottom * xw + static_cast<long double>(den[i]);
  const Wide r = top / bottom;
  return {static_cast<double>(r.real()), static_cast<double>(r.imag())};
}

double max_modulus(const CVec& r) { return r.size() == 0 ? 0.0 : r.cwiseAbs().maxCoeff(); }

}  // namespace

ValidationFailure::ValidationFailure(std::vector<Violation> violations)
    : InvalidInput([&] {
        std::string msg = "invalid interpolation problem:";
        for (const auto& v : violations) msg += "\n  [" + to_string(v.kind) + "] " + v.message;
        return msg;
      }()),
      violations_(std::move(violations)) {}

HomotopyContext::HomotopyContext(const InterpolationProblem& normalized)
    : order_(normalized.order()),
      sigma_(normalized.sigma),
      companion_(nevpick::companion(normalized.sigma)),
      d_(build_d(normalized.sigma)),
      cee_(build_cee_matrices(normalized)),
      central_(std::all_of(normalized.values.begin(), normalized.values.end(),
                           [](Complex w) { return w == Complex(0.5); })) {
  if (sigma_.degree() != order_) throw InvalidInput("sigma degree does not match the problem order");
}

Complex Solution::interpolant(const Node& z) const {
  return scale * 0.5 * ratio_at_inverse(b, a, z.inverse());
}

Complex Solution::interpolant(Complex z) const { return interpolant(Node::finite(z)); }

ABPair ab_of_p(const OperatorPair& pair, const CompanionData& comp, const Vec& p) {
  const Vec x = comp.gamma * p + comp.sigma_vec;
  const Vec ux = pair.U * x + pair.u;
  return {MonicPolynomial(with_leading_one(x - ux)), MonicPolynomial(with_leading_one(x + ux))};
}

Vec eval_G(const Vec& p, const OperatorPair& pair, const HomotopyContext& ctx) {
  const int n = ctx.order();
  const auto ab = ab_of_p(pair, ctx.companion(), p);
  const Vec full = build_S(ab.a.coeffs()) * ab.b.coeffs();
  return full.head(n) - 2.0 * (1.0 - ctx.companion().h.dot(p)) * ctx.d();
}

Vec eval_G(const Vec& p, double nu, const HomotopyContext& ctx) { return eval_G(p, ctx.pair_at(nu), ctx); }

Mat jac_G(const Vec& p, const OperatorPair& pair, const HomotopyContext& ctx) {
  const int n = ctx.order();
  const auto& comp = ctx.companion();
  const Vec x = comp.gamma * p + comp.sigma_vec;
  const Vec half_diff = pair.U * x + pair.u;  // (b - a) / 2
  const Mat jac = -2.0 * build_S(with_leading_zero(half_diff)) * pad_top(pair.U * comp.gamma) +
                  2.0 * build_S(with_leading_one(x)) * pad_top(comp.gamma);
  return jac.topRows(n) + 2.0 * ctx.d() * comp.h.transpose();
}

Mat jac_G(const Vec& p, double nu, const HomotopyContext& ctx) { return jac_G(p, ctx.pair_at(nu), ctx); }

Vec dG_dnu(const Vec& p, const OperatorPair& pair, const HomotopyContext& ctx) {
  const int n = ctx.order();
  const auto& comp = ctx.companion();
  const Vec x = comp.gamma * p + comp.sigma_vec;
  const Vec half_diff = pair.U * x + pair.u;
  const Vec rate = pair.U_dot * x + pair.u_dot;
  const Vec full = -2.0 * build_S(with_leading_zero(half_diff)) * with_leading_zero(rate);
  return full.head(n);
}

Vec dG_dnu(const Vec& p, double nu, const HomotopyContext& ctx) { return dG_dnu(p, ctx.pair_at(nu), ctx); }

std::optional<Vec> tangent(const Vec& p, const OperatorPair& pair, const HomotopyContext& ctx) {
  Eigen::FullPivLU<Mat> lu(jac_G(p, pair, ctx));
  if (!lu.isInvertible()) return std::nullopt;
  Vec t = -lu.solve(dG_dnu(p, pair, ctx));
  if (!t.allFinite()) return std::nullopt;
  return t;
}

std::optional<Vec> predictor(const ContinuationState& state, double step, const HomotopyContext& ctx) {
  const auto t = tangent(state.p, ctx.pair_at(state.nu), ctx);
  if (!t) return std::nullopt;
  return Vec(state.p + step * *t);
}

namespace {

CorrectorResult newton(const Vec& p_hat, const OperatorPair& pair, const HomotopyContext& ctx,
                       const ContinuationOptions& opts) {
  CorrectorResult out;
  out.p = p_hat;
  for (int k = 0;; ++k) {
    const Vec r = eval_G(out.p, pair, ctx);
    const double res = inf_norm(r);
    out.residuals.push_back(res);
    out.iters = k;
    if (!std::isfinite(res) || res > 1e8) return out;
    if (res <= opts.tol_corrector) {
      out.converged = true;
      return out;
    }
    if (k == opts.max_newton_iters) return out;
    Eigen::FullPivLU<Mat> lu(jac_G(out.p, pair, ctx));
    if (!lu.isInvertible()) return out;
    out.p -= lu.solve(r);
  }
}

void refine_endpoint(ContinuationState& state, const HomotopyContext& ctx, const ContinuationOptions& opts) {
  const OperatorPair pair = ctx.pair_at(state.nu);
  bool moved = false;
  for (int k = 0; k < opts.refine_iters && state.residual > 0.0; ++k) {
    Eigen::FullPivLU<Mat> lu(jac_G(state.p, pair, ctx));
    if (!lu.isInvertible()) break;
    const Vec next = state.p - lu.solve(eval_G(state.p, pair, ctx));
    const double res = inf_norm(eval_G(next, pair, ctx));
    if (!(res < state.residual)) break;
    state.p = next;
    state.residual = res;
    moved = true;
  }
  if (moved) state.poles = roots(ab_of_p(pair, ctx.companion(), state.p).a);
}

}  // namespace

CorrectorResult corrector(const Vec& p_hat, double nu, const HomotopyContext& ctx, const ContinuationOptions& opts) {
  return newton(p_hat, ctx.pair_at(nu), ctx, opts);
}

std::vector<ContinuationState> follow_path(const HomotopyContext& ctx, const ContinuationOptions& opts,
                                           PathStats* stats) {
  PathStats local;
  PathStats& st = stats ? *stats : local;
  st = {};
  const int n = ctx.order();

  std::vector<ContinuationState> states;
  ContinuationState start;
  start.p = Vec::Zero(n);
  start.residual = inf_norm(eval_G(start.p, 0.0, ctx));
  start.poles = roots(ctx.sigma());
  states.push_back(start);
  if (ctx.is_central()) return states;

  double step = opts.step_init;
  OperatorPair pair = ctx.pair_at(0.0);
  std::optional<Vec> direction;
  while (states.back().nu < 1.0) {
    if (step < opts.step_min) {
      throw PathFailure(fmt::format("continuation step underflow at nu = {:.6f} (step {:.3e} < {:.3e})",
                                    states.back().nu, step, opts.step_min));
    }
    const ContinuationState& cur = states.back();
    const double nu_next = cur.nu + step >= 1.0 - 1e-14 ? 1.0 : cur.nu + step;
    const double h = nu_next - cur.nu;

    if (!direction) {
      direction = tangent(cur.p, pair, ctx);
      if (!direction) {
        ++st.rejected_singular;
        step *= 0.5;
        continue;
      }
    }
    const Vec p_hat = cur.p + h * *direction;
    const OperatorPair next_pair = ctx.pair_at(nu_next);
    const Vec g_hat = eval_G(p_hat, next_pair, ctx);
    if (!(std::abs(g_hat[0]) <= opts.mu)) {
      ++st.rejected_band;
      step *= 0.5;
      continue;
    }
    const auto corr = newton(p_hat, next_pair, ctx, opts);
    if (!corr.converged) {
      ++st.rejected_corrector;
      step *= 0.5;
      continue;
    }
    CVec poles = roots(ab_of_p(next_pair, ctx.companion(), corr.p).a);
    if (opts.require_schur_a && !(max_modulus(poles) < 1.0)) {
      ++st.rejected_poles;
      step *= 0.5;
      continue;
    }
    ContinuationState next;
    next.nu = nu_next;
    next.p = corr.p;
    next.step = h;
    next.corrector_iters = corr.iters;
    next.residual = corr.residuals.back();
    next.poles = std::move(poles);
    states.push_back(std::move(next));
    ++st.accepted;
    pair = next_pair;
    direction.reset();
    step = std::min(step * opts.step_grow, opts.step_max);
  }
  return states;
}

Solution solve(const InterpolationProblem& problem, const ContinuationOptions& opts) {
  auto violations = validate(problem);
  if (!violations.empty()) throw ValidationFailure(std::move(violations));

  const NormalizedProblem normalized = normalize(problem);
  const HomotopyContext ctx(normalized.problem);
  Solution sol;
  sol.trajectory = follow_path(ctx, opts, &sol.diagnostics.path);
  if (!ctx.is_central()) refine_endpoint(sol.trajectory.back(), ctx, opts);

  const auto& comp = ctx.companion();
  const OperatorPair final_pair = ctx.pair_at(1.0);
  sol.p = sol.trajectory.back().p;
  const Vec g = g_of_p(final_pair, comp, sol.p);
  sol.P = recover_P(comp, sol.p, g);
  auto ab = ab_of_p(final_pair, comp, sol.p);
  sol.a = std::move(ab.a);
  sol.b = std::move(ab.b);
  sol.sigma = problem.sigma;
  sol.rho = std::sqrt(1.0 - comp.h.dot(sol.p));
  sol.scale = normalized.scale;

  auto& diag = sol.diagnostics;
  diag.cee_residual = cee_residual(sol.P, comp, g);
  diag.v_condition = ctx.cee().v_condition;
  diag.poles = sol.trajectory.back().poles;
  diag.zeros = roots(sol.b);
  diag.spectral_zeros = roots(sol.sigma);
  Eigen::JacobiSVD<Mat> svd(sol.P);
  diag.singular_values = svd.singularValues();
  for (std::size_t k = 0; k < problem.nodes.size(); ++k) {
    const double r = std::abs(sol.interpolant(problem.nodes[k]) - problem.values[k]);
    diag.interpolation_residuals.push_back(r);
    diag.max_interpolation_residual = std::max(diag.max_interpolation_residual, r);
  }
  return sol;
}

}  // namespace nevpick
