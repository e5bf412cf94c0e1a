#include "auglag/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

namespace auglag {

KktReport kkt_report(const DiscreteProblem& dp, const EllipticOperator& op, const GridFunction& u,
                     const GridFunction& y, const GridFunction& p, const GridFunction& mu,
                     const GridFunction& lambda, double alpha, double u_tol) {
  const int n = dp.grid.size();
  if (u.size() != n || y.size() != n || p.size() != n || mu.size() != n || lambda.size() != n)
    throw std::invalid_argument("kkt_report: size mismatch");
  if (!(alpha > 0.0)) throw std::invalid_argument("kkt_report: alpha must be positive");

  KktReport r;
  const auto& a = op.matrix();
  r.state_residual = norm_h(dp.grid, a * y - u - dp.source);
  r.adjoint_residual = norm_h(dp.grid, a * p - (y - dp.target + mu));

  const GridFunction step = (-(p + dp.beta * lambda) / alpha).cwiseMax(dp.lower).cwiseMin(dp.upper);
  r.projection_residual = norm_h(dp.grid, u - step);

  r.lambda_violation = (lambda.cwiseAbs().array() - 1.0).max(0.0).maxCoeff();
  r.complementarity = std::abs(dot_h(dp.grid, mu, y - dp.obstacle));
  r.feasibility = max_positive_part(y - dp.obstacle);

  int zero_count = 0;
  for (int i = 0; i < n; ++i)
    if (std::abs(u[i]) <= u_tol) ++zero_count;
  r.sparsity_fraction = static_cast<double>(zero_count) / n;
  return r;
}

ErrorReport error_vs_exact(const DiscreteProblem& dp, const GridFunction& u, const GridFunction& y,
                           std::optional<double> alpha) {
  if (!dp.exact) throw std::invalid_argument("error_vs_exact: problem carries no exact solution");
  ErrorReport e;
  e.err_u = norm_h(dp.grid, u - dp.exact->control);
  e.err_y = norm_h(dp.grid, y - dp.exact->state);
  if (alpha) {
    if (!(*alpha > 0.0)) throw std::invalid_argument("error_vs_exact: alpha must be positive");
    e.err_y_sq_over_alpha = e.err_y * e.err_y / *alpha;
  }
  return e;
}

SparsityProfile sparsity_profile(const GridFunction& u, const GridFunction& lower,
                                 const GridFunction& upper, double u_tol) {
  const int n = static_cast<int>(u.size());
  if (lower.size() != n || upper.size() != n)
    throw std::invalid_argument("sparsity_profile: size mismatch");
  SparsityProfile s;
  int zero = 0, lo = 0, hi = 0;
  for (int i = 0; i < n; ++i) {
    if (std::abs(u[i]) <= u_tol) ++zero;
    if (u[i] <= lower[i] + u_tol) ++lo;
    if (u[i] >= upper[i] - u_tol) ++hi;
  }
  s.fraction_zero = static_cast<double>(zero) / n;
  s.fraction_lower = static_cast<double>(lo) / n;
  s.fraction_upper = static_cast<double>(hi) / n;
  return s;
}

}  // namespace auglag
