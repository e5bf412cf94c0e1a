#pragma once

#include <cstdint>
#include <vector>

#include "auglag/pde.hpp"
#include "auglag/problems.hpp"

namespace auglag {

/// Nodewise index sets of the active-set method. The five control masks
/// partition the nodes: control pinned at the lower bound, clamped to zero
/// by the L1 term, pinned at the upper bound, or free on the smooth branch
/// with subgradient -1 (control in [u_a,0]) resp. +1 (control in [0,u_b]).
/// penalty_active marks nodes where mu + rho (y - psi) > 0, i.e. where the
/// shifted state penalty contributes.
struct ActiveSets {
  std::vector<std::uint8_t> at_lower, at_zero, at_upper, free_neg, free_pos;
  std::vector<std::uint8_t> penalty_active;

  bool operator==(const ActiveSets&) const = default;
  /// The five control masks are pairwise disjoint and cover every node.
  bool is_partition() const;
  int size() const { return static_cast<int>(at_lower.size()); }
};

/// Classification of one iterate. Ties at the closed interval endpoints go
/// to the smooth branches; the bound/zero conditions are strict.
ActiveSets classify_sets(const GridFunction& p, const GridFunction& y, const GridFunction& mu,
                         double alpha, double rho, const DiscreteProblem& dp);

/// Solution of the linear optimality system on fixed sets (control and
/// combined multiplier xi eliminated nodewise; the state multiplier
/// substituted on the penalty-active mask).
struct KktPoint {
  GridFunction u, y, p, xi, mu;
};

KktPoint solve_kkt_on_sets(const ActiveSets& sets, const DiscreteProblem& dp,
                           const EllipticOperator& op, double alpha, double rho,
                           const GridFunction& mu);

/// Result of the active-set inner iteration.
struct SubproblemResult {
  GridFunction u, y, p, xi, mu, lambda;
  ActiveSets sets;
  int iterations = 0;
  bool converged = false;
};

/// Active-set method for the penalized subproblem: alternate classification
/// and the linear solve until every index set repeats exactly, then recover
/// the L1 subgradient lambda = P_[-1,1](xi / beta). Hitting max_iterations
/// returns converged = false with the last iterate (control clamped into
/// the box and multiplier taken as the positive part, so the result fields
/// are always range-valid).
SubproblemResult inner_solve(const DiscreteProblem& dp, const EllipticOperator& op, double alpha,
                             double rho, const GridFunction& mu, const GridFunction& u0,
                             const GridFunction& p0, int max_iterations);

/// Shifted quadratic state penalty
///   (w / 2 rho) sum_i [ ((mu_i + rho (y_i - psi_i))_+)^2 - mu_i^2 ].
double penalty_value(const Grid& grid, const GridFunction& y, double rho, const GridFunction& mu,
                     const GridFunction& psi);

/// Full subproblem objective: tracking + L1 + Tikhonov + penalty, with the
/// grid quadrature weight.
double subproblem_objective(const DiscreteProblem& dp, double alpha, double rho,
                            const GridFunction& mu, const GridFunction& u, const GridFunction& y);

/// Proximal map of threshold*|.| plus the box indicator (the box contains 0,
/// so soft-threshold followed by clipping is exact).
double prox_l1_box(double v, double threshold, double lo, double hi);

struct ProxResult {
  GridFunction u;
  int iterations = 0;
  double residual = 0.0;
  /// Objective value after each accepted step (first entry: start value).
  std::vector<double> objective_history;
};

/// Proximal-gradient descent on the subproblem objective, used to produce
/// warm starts when the active-set iteration fails to settle. One state and
/// one adjoint solve per iteration; backtracking halves the step until the
/// sufficient-decrease test holds. Stops at fixed-point residual <= tol.
ProxResult prox_gradient(const DiscreteProblem& dp, const EllipticOperator& op, double alpha,
                         double rho, const GridFunction& mu, const GridFunction& u0,
                         int max_iterations, double tol);

}  // namespace auglag
