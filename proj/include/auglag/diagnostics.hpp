#pragma once

#include <optional>

#include "auglag/pde.hpp"
#include "auglag/problems.hpp"

namespace auglag {

/// Residual and structure metrics of one iterate against the first-order
/// optimality system of the penalized subproblem.
struct KktReport {
  double state_residual = 0.0;       // ||A y - u - f||_h
  double adjoint_residual = 0.0;     // ||A p - (y - y_d + mu)||_h
  double projection_residual = 0.0;  // ||u - P_[ua,ub](-(p + beta lambda)/alpha)||_h
  double lambda_violation = 0.0;     // max distance of lambda to [-1,1]
  double complementarity = 0.0;      // |(mu, y - psi)_h|
  double feasibility = 0.0;          // max (y - psi)_+
  double sparsity_fraction = 0.0;    // fraction of nodes with |u| <= u_tol
};

KktReport kkt_report(const DiscreteProblem& dp, const EllipticOperator& op, const GridFunction& u,
                     const GridFunction& y, const GridFunction& p, const GridFunction& mu,
                     const GridFunction& lambda, double alpha, double u_tol = 1e-8);

struct ErrorReport {
  double err_u = 0.0;
  double err_y = 0.0;
  std::optional<double> err_y_sq_over_alpha;
};

/// Discrete L2 errors against the exact bundle; throws if the problem
/// carries none. When alpha is given, also reports ||y - ybar||_h^2 / alpha.
ErrorReport error_vs_exact(const DiscreteProblem& dp, const GridFunction& u, const GridFunction& y,
                           std::optional<double> alpha = {});

struct SparsityProfile {
  double fraction_zero = 0.0;
  double fraction_lower = 0.0;
  double fraction_upper = 0.0;
};

/// Node fractions with |u| <= u_tol, u <= u_a + u_tol, u >= u_b - u_tol.
SparsityProfile sparsity_profile(const GridFunction& u, const GridFunction& lower,
                                 const GridFunction& upper, double u_tol = 1e-8);

}  // namespace auglag
