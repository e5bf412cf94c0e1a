#include "auglag/solver.hpp"

#include <cmath>
#include <stdexcept>

namespace auglag {

void SolverParams::validate() const {
  if (!(alpha1 > 0.0)) throw std::invalid_argument("alpha1 must be positive");
  if (!(rho1 > 0.0)) throw std::invalid_argument("rho1 must be positive");
  if (!(theta > 1.0)) throw std::invalid_argument("theta must be greater than 1");
  if (!(omega > 0.0 && omega < 1.0)) throw std::invalid_argument("omega must lie in (0,1)");
  if (!(tau > 0.0 && tau < 1.0)) throw std::invalid_argument("tau must lie in (0,1)");
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  if (!(eps_i > 0.0 && eps_i < eps)) throw std::invalid_argument("eps-i must lie in (0, eps)");
  if (!(r0_plus > 0.0)) throw std::invalid_argument("r0-plus must be positive");
  if (max_outer < 1) throw std::invalid_argument("max-outer must be at least 1");
  if (max_inner < 1) throw std::invalid_argument("max-inner must be at least 1");
  if (!(tol_lin > 0.0)) throw std::invalid_argument("tol-lin must be positive");
}

const char* to_string(StepClass c) {
  switch (c) {
    case StepClass::Successful: return "successful";
    case StepClass::Intermediate: return "intermediate";
    case StepClass::NotSuccessful: return "not_successful";
  }
  return "?";
}

StepCounts OuterLog::counts() const {
  StepCounts c;
  for (const auto& r : rows) {
    if (r.step == StepClass::Successful) ++c.successful;
    else if (r.step == StepClass::Intermediate) ++c.intermediate;
    else ++c.not_successful;
  }
  return c;
}

Feasibility feasibility_measure(const Grid& grid, const GridFunction& y,
                                const GridFunction& mu_updated, const GridFunction& psi,
                                double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("feasibility_measure: alpha must be positive");
  Feasibility f;
  f.feasibility = max_positive_part(y - psi);
  f.complementarity = std::abs(dot_h(grid, mu_updated, psi - y));
  f.R = (f.feasibility + f.complementarity) / alpha;
  return f;
}

GridFunction multiplier_update(const GridFunction& mu, const GridFunction& y,
                               const GridFunction& psi, double rho) {
  return (mu.array() + rho * (y - psi).array()).max(0.0).matrix();
}

double stopping_residual(const DiscreteProblem& dp, const GridFunction& u, const GridFunction& y,
                         const GridFunction& p, const GridFunction& mu,
                         const GridFunction& lambda) {
  const GridFunction target = u - (p + dp.beta * lambda);
  const GridFunction projected = target.cwiseMax(dp.lower).cwiseMin(dp.upper);
  const double stationarity = norm_h(dp.grid, u - projected);
  const double feas = max_positive_part(y - dp.obstacle);
  const double compl_term = std::abs(dot_h(dp.grid, mu, y - dp.obstacle));
  return stationarity + feas + compl_term;
}

namespace {

GridFunction adjoint_at(const DiscreteProblem& dp, const EllipticOperator& op,
                        const GridFunction& u, double rho, const GridFunction& mu,
                        GridFunction* y_out = nullptr) {
  GridFunction y = solve_state(op, u, dp.source);
  GridFunction shifted = multiplier_update(mu, y, dp.obstacle, rho);
  GridFunction p = solve_adjoint(op, y - dp.target + shifted);
  if (y_out) *y_out = std::move(y);
  return p;
}

double globalize_tol(double alpha) { return std::max(1e-10 * alpha, 1e-14); }

}  // namespace

RunResult run(const DiscreteProblem& dp, const EllipticOperator& op, const SolverParams& params) {
  params.validate();
  if (!(dp.beta > 0.0)) throw std::invalid_argument("run: beta must be positive");
  const int n = dp.grid.size();

  double alpha = params.alpha1;
  double rho = params.rho1;
  double r_plus = params.r0_plus;
  GridFunction mu = GridFunction::Zero(n);

  // Cold start: a short proximal-gradient burn-in from u = 0.
  ProxResult burn = prox_gradient(dp, op, alpha, rho, mu, GridFunction::Zero(n), 200,
                                  globalize_tol(alpha));
  GridFunction u = burn.u;
  GridFunction p = adjoint_at(dp, op, u, rho, mu);

  RunResult result;
  int n_success = 0;
  bool have_recorded = false;
  SubproblemResult last_inner;

  for (int k = 1; k <= params.max_outer; ++k) {
    SubproblemResult res = inner_solve(dp, op, alpha, rho, mu, u, p, params.max_inner);
    int inner_count = res.iterations;
    if (!res.converged) {
      ProxResult warm = prox_gradient(dp, op, alpha, rho, mu, u, 20000, globalize_tol(alpha));
      GridFunction p_warm = adjoint_at(dp, op, warm.u, rho, mu);
      res = inner_solve(dp, op, alpha, rho, mu, warm.u, p_warm, params.max_inner);
      inner_count += res.iterations;
    }

    const GridFunction& mu_bar = res.mu;  // equals (mu + rho (y - psi))_+
    const Feasibility fm = feasibility_measure(dp.grid, res.y, mu_bar, dp.obstacle, alpha);
    const double stop_res = stopping_residual(dp, res.u, res.y, res.p, mu_bar, res.lambda);

    StepClass cls;
    if (res.converged && fm.R <= params.tau * r_plus) {
      cls = StepClass::Successful;
    } else if (res.converged && fm.feasibility + fm.complementarity < params.eps_i) {
      cls = StepClass::Intermediate;
    } else {
      cls = StepClass::NotSuccessful;
    }

    OuterRecord row;
    row.k = k;
    row.alpha = alpha;
    row.rho = rho;
    row.R = fm.R;
    row.step = cls;
    row.inner_iterations = inner_count;
    row.feasibility = fm.feasibility;
    row.complementarity = fm.complementarity;
    row.stop_residual = stop_res;
    if (dp.exact) {
      row.err_u = norm_h(dp.grid, res.u - dp.exact->control);
      row.err_y = norm_h(dp.grid, res.y - dp.exact->state);
    }

    switch (cls) {
      case StepClass::Successful:
        ++n_success;
        r_plus = fm.R;
        mu = mu_bar;
        alpha *= params.omega;
        result.iterate = res;
        have_recorded = true;
        break;
      case StepClass::Intermediate:
        mu = mu_bar;
        alpha *= params.omega;
        result.iterate = res;
        have_recorded = true;
        break;
      case StepClass::NotSuccessful:
        rho *= params.theta;
        break;
    }
    row.n = n_success;
    result.log.rows.push_back(std::move(row));

    // Warm start for the next subproblem.
    u = res.u;
    p = res.p;
    last_inner = std::move(res);

    // The breaking condition is evaluated on the recorded iterate, which
    // only changes on successful/intermediate steps.
    if (cls != StepClass::NotSuccessful && stop_res <= params.eps) {
      result.log.converged = true;
      break;
    }
  }

  if (!have_recorded) result.iterate = std::move(last_inner);
  return result;
}

}  // namespace auglag
