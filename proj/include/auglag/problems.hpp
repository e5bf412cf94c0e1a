#pragma once

#include <array>
#include <optional>
#include <string>

#include "auglag/grid.hpp"

namespace auglag {

/// Closed-form optimal quadruple (control, state, adjoint, state multiplier)
/// for benchmark problems constructed to have a known solution.
struct ExactBundle {
  ScalarField control;
  ScalarField state;
  ScalarField adjoint;
  ScalarField multiplier;
};

/// Continuous problem data: domain, bounds, sparsity weight, obstacle,
/// target state and source shift. Immutable after construction.
struct ProblemSpec {
  std::string name;
  int dim = 1;
  std::array<double, 2> lo{0.0, 0.0};
  std::array<double, 2> hi{1.0, 0.0};
  double beta = 1.0;
  ScalarField lower;     // u_a <= 0
  ScalarField upper;     // u_b >= 0
  ScalarField obstacle;  // psi
  ScalarField target;    // y_d
  ScalarField source;    // f
  std::optional<ExactBundle> exact;
};

/// Exact quadruple sampled at the interior nodes.
struct DiscreteExact {
  GridFunction control, state, adjoint, multiplier;
};

/// Problem data sampled at the interior nodes of one grid.
struct DiscreteProblem {
  Grid grid;
  double beta = 1.0;
  GridFunction lower, upper, obstacle, target, source;
  std::optional<DiscreteExact> exact;
};

/// Builds a grid covering the spec's domain with the given cells per axis.
Grid make_grid(const ProblemSpec& spec, int cells_per_axis);

/// Samples the spec on a grid. Throws if u_a <= 0 <= u_b fails at a node,
/// if beta < 0, or if the obstacle is not finite everywhere.
DiscreteProblem discretize(const ProblemSpec& spec, const Grid& grid);

/// Samples the exact bundle; throws std::invalid_argument if the spec
/// carries none.
DiscreteExact eval_exact(const ProblemSpec& spec, const Grid& grid);

/// Bang-bang-off construction on (-1,1) with known solution: u_a=-1, u_b=1,
/// beta=1, psi=1; source and target derived analytically from the closed
/// forms so the optimality system holds.
ProblemSpec example1();

/// The 2D bang-bang construction recipe (plateau state, oscillatory adjoint
/// with radial cutoff, u = -sign(p), bump multiplier) on the square [-2,2]^2.
/// The closed forms solve the beta = 0 problem; the bundle is attached only
/// for beta == 0.
ProblemSpec example2_rect(double beta);

/// Reachable-target problem on (0,1)^2 with psi = 0.01, beta = 1e-3,
/// y_d = sin(pi x) sin(pi y) / (2 pi). No exact solution.
ProblemSpec example3();

/// Sanity problem with an inactive state constraint (psi = 1e6): a plain
/// box/L1 Tikhonov problem on (0,1) whose solution is identically zero
/// (|S y_d| stays below beta).
ProblemSpec tikhonov_sanity();

/// Factory by CLI name: example1, example2_rect, example3, tikhonov_sanity.
/// beta_override replaces the problem's sparsity weight; constructed exact
/// bundles are dropped when the override changes the objective they solve.
ProblemSpec make_problem(const std::string& name, std::optional<double> beta_override = {});

}  // namespace auglag
