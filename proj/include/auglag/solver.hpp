#pragma once

#include <optional>
#include <string>
#include <vector>

#include "auglag/subproblem.hpp"

namespace auglag {

/// Outer-loop parameters. theta grows the penalty on not-successful steps,
/// omega shrinks the Tikhonov weight on successful/intermediate steps, tau
/// is the sufficient-decrease factor on the acceptance measure R, eps the
/// stopping tolerance and eps_i (< eps) the intermediate-step tolerance on
/// the unscaled feasibility + complementarity sum.
struct SolverParams {
  double alpha1 = 1.0;
  double rho1 = 100.0;
  double theta = 5.0;
  double omega = 0.75;
  double tau = 0.8;
  double eps = 1e-6;
  double eps_i = 5e-7;
  double r0_plus = 1e12;
  int max_outer = 200;
  int max_inner = 50;
  double tol_lin = 1e-12;

  /// Throws std::invalid_argument naming the offending parameter.
  void validate() const;
};

enum class StepClass { Successful, Intermediate, NotSuccessful };

const char* to_string(StepClass c);

/// One outer iteration: k is the outer index, n the count of successful
/// steps recorded so far (including this one when successful). alpha, rho
/// and R are the values in effect when the subproblem was solved.
struct OuterRecord {
  int k = 0;
  int n = 0;
  double alpha = 0.0;
  double rho = 0.0;
  double R = 0.0;
  StepClass step = StepClass::NotSuccessful;
  int inner_iterations = 0;
  double feasibility = 0.0;
  double complementarity = 0.0;
  double stop_residual = 0.0;
  std::optional<double> err_u;
  std::optional<double> err_y;
};

struct StepCounts {
  int successful = 0;
  int intermediate = 0;
  int not_successful = 0;
};

struct OuterLog {
  std::vector<OuterRecord> rows;
  bool converged = false;
  StepCounts counts() const;
};

/// Components of the acceptance measure R = (feas + compl) / alpha with
/// feas the max positive part of y - psi and compl = |(mu, psi - y)_h|.
struct Feasibility {
  double R = 0.0;
  double feasibility = 0.0;
  double complementarity = 0.0;
};

Feasibility feasibility_measure(const Grid& grid, const GridFunction& y,
                                const GridFunction& mu_updated, const GridFunction& psi,
                                double alpha);

/// mu_next = (mu + rho (y - psi))_+ nodewise.
GridFunction multiplier_update(const GridFunction& mu, const GridFunction& y,
                               const GridFunction& psi, double rho);

/// Left side of the breaking condition:
///   || u - P_[ua,ub](u - (p + beta lambda)) ||_h + max (y - psi)_+ + |(mu, y - psi)_h|.
double stopping_residual(const DiscreteProblem& dp, const GridFunction& u, const GridFunction& y,
                         const GridFunction& p, const GridFunction& mu,
                         const GridFunction& lambda);

struct RunResult {
  SubproblemResult iterate;  // last recorded iterate; mu holds the updated multiplier
  OuterLog log;
};

/// Augmented-Lagrange outer driver with the successful / intermediate /
/// not-successful trichotomy: successful steps (R <= tau R+) shrink alpha,
/// adopt the updated multiplier and reset the reference R+; intermediate
/// steps (feas + compl < eps_i) shrink alpha and adopt the multiplier but
/// leave R+ alone; not-successful steps only grow rho. Inner solves are
/// warm-started from the previous iterate; a proximal-gradient burn-in
/// produces the first start, and an inner failure triggers one globalized
/// retry before the step is declared not successful.
RunResult run(const DiscreteProblem& dp, const EllipticOperator& op, const SolverParams& params);

}  // namespace auglag
