#include "auglag/problems.hpp"

#include <cmath>
#include <stdexcept>

namespace auglag {

namespace {

ScalarField constant(double c) {
  return [c](double, double) { return c; };
}

// ---- Example 1 closed forms (all even in x) ----

double ex1_state(double x) {
  const double a = std::abs(x);
  if (a <= 0.75) return 1.0;
  return 28.0 - 108.0 * a + 144.0 * a * a - 64.0 * a * a * a;
}

// second derivative of ex1_state
double ex1_state_dd(double x) {
  const double a = std::abs(x);
  return a <= 0.75 ? 0.0 : 288.0 - 384.0 * a;
}

double ex1_adjoint(double x) { return -2.0 * std::cos(1.5 * M_PI * x); }

double ex1_adjoint_dd(double x) {
  return 4.5 * M_PI * M_PI * std::cos(1.5 * M_PI * x);
}

double ex1_control(double x) {
  const double a = std::abs(x);
  if (a >= 8.0 / 9.0) return 0.0;
  if (a > 4.0 / 9.0) return -1.0;
  if (a >= 2.0 / 9.0) return 0.0;
  return 1.0;
}

double ex1_multiplier(double x) {
  const double t = 4.0 * x / 3.0;
  const double s = 1.0 - t * t;
  return s > 0.0 ? std::exp(-1.0 / s) : 0.0;
}

// ---- Example 2 closed forms (radial pieces) ----

double ex2_plateau(double r) {
  if (r < 1.0) return 1.0;
  return 32.0 - 120.0 * r + 180.0 * r * r - 130.0 * r * r * r + 45.0 * r * r * r * r -
         6.0 * r * r * r * r * r;
}

double ex2_plateau_laplacian(double r) {
  if (r < 1.0) return 0.0;
  const double g1 = -120.0 + 360.0 * r - 390.0 * r * r + 180.0 * r * r * r - 30.0 * r * r * r * r;
  const double g2 = 360.0 - 780.0 * r + 540.0 * r * r - 120.0 * r * r * r;
  return g2 + g1 / r;
}

double ex2_cutoff(double r) {
  return 1.0 - 1.25 * r * r * r + 0.9375 * r * r * r * r - 0.1875 * r * r * r * r * r;
}

double ex2_cutoff_d(double r) {
  return -3.75 * r * r + 3.75 * r * r * r - 0.9375 * r * r * r * r;
}

double ex2_cutoff_dd(double r) { return -7.5 * r + 11.25 * r * r - 3.75 * r * r * r; }

double ex2_adjoint(double x, double y) {
  const double r = std::hypot(x, y);
  return std::sin(x) * std::sin(y) * ex2_cutoff(r);
}

double ex2_adjoint_laplacian(double x, double y) {
  const double r = std::hypot(x, y);
  const double sx = std::sin(x), sy = std::sin(y);
  const double cx = std::cos(x), cy = std::cos(y);
  const double q = ex2_cutoff(r);
  if (r < 1e-12) {
    // q'(0) = 0 and q'/r -> 0, q'' -> 0; only the -2 sin sin q term survives
    return -2.0 * sx * sy * q;
  }
  const double qd = ex2_cutoff_d(r);
  const double qdd = ex2_cutoff_dd(r);
  return -2.0 * sx * sy * q + 2.0 * qd / r * (cx * sy * x + sx * cy * y) +
         sx * sy * (qdd + qd / r);
}

double ex2_multiplier(double x, double y) {
  const double r2 = x * x + y * y;
  return r2 < 1.0 ? std::exp(-1.0 / (1.0 - r2)) : 0.0;
}

double ex2_control(double x, double y) {
  const double p = ex2_adjoint(x, y);
  return p > 0.0 ? -1.0 : (p < 0.0 ? 1.0 : 0.0);
}

}  // namespace

Grid make_grid(const ProblemSpec& spec, int cells_per_axis) {
  if (spec.dim == 1) return Grid::interval(spec.lo[0], spec.hi[0], cells_per_axis);
  return Grid::rectangle(spec.lo[0], spec.hi[0], spec.lo[1], spec.hi[1],
                         cells_per_axis, cells_per_axis);
}

DiscreteProblem discretize(const ProblemSpec& spec, const Grid& grid) {
  if (grid.dim() != spec.dim) throw std::invalid_argument("discretize: grid/spec dimension mismatch");
  if (spec.beta < 0.0) throw std::invalid_argument("discretize: beta must be nonnegative");
  DiscreteProblem dp;
  dp.grid = grid;
  dp.beta = spec.beta;
  dp.lower = grid.evaluate(spec.lower);
  dp.upper = grid.evaluate(spec.upper);
  dp.obstacle = grid.evaluate(spec.obstacle);
  dp.target = grid.evaluate(spec.target);
  dp.source = grid.evaluate(spec.source);
  for (int i = 0; i < grid.size(); ++i) {
    if (!(dp.lower[i] <= 0.0 && 0.0 <= dp.upper[i]))
      throw std::invalid_argument("discretize: bounds must satisfy u_a <= 0 <= u_b at every node");
    if (!std::isfinite(dp.obstacle[i]))
      throw std::invalid_argument("discretize: obstacle must be finite at every node");
  }
  if (spec.exact) dp.exact = eval_exact(spec, grid);
  return dp;
}

DiscreteExact eval_exact(const ProblemSpec& spec, const Grid& grid) {
  if (!spec.exact)
    throw std::invalid_argument("eval_exact: problem '" + spec.name + "' carries no exact solution");
  DiscreteExact e;
  e.control = grid.evaluate(spec.exact->control);
  e.state = grid.evaluate(spec.exact->state);
  e.adjoint = grid.evaluate(spec.exact->adjoint);
  e.multiplier = grid.evaluate(spec.exact->multiplier);
  return e;
}

ProblemSpec example1() {
  ProblemSpec s;
  s.name = "example1";
  s.dim = 1;
  s.lo = {-1.0, 0.0};
  s.hi = {1.0, 0.0};
  s.beta = 1.0;
  s.lower = constant(-1.0);
  s.upper = constant(1.0);
  s.obstacle = constant(1.0);
  // f = -y'' - u and y_d = p'' + y + mu, so the quadruple satisfies the
  // optimality system of the shifted state equation A y = u + f.
  s.source = [](double x, double) { return -ex1_state_dd(x) - ex1_control(x); };
  s.target = [](double x, double) { return ex1_adjoint_dd(x) + ex1_state(x) + ex1_multiplier(x); };
  s.exact = ExactBundle{
      [](double x, double) { return ex1_control(x); },
      [](double x, double) { return ex1_state(x); },
      [](double x, double) { return ex1_adjoint(x); },
      [](double x, double) { return ex1_multiplier(x); },
  };
  return s;
}

ProblemSpec example2_rect(double beta) {
  ProblemSpec s;
  s.name = "example2_rect";
  s.dim = 2;
  s.lo = {-2.0, -2.0};
  s.hi = {2.0, 2.0};
  s.beta = beta;
  s.lower = constant(-1.0);
  s.upper = constant(1.0);
  s.obstacle = constant(1.0);
  s.source = [](double x, double y) {
    return -ex2_plateau_laplacian(std::hypot(x, y)) - ex2_control(x, y);
  };
  s.target = [](double x, double y) {
    return ex2_adjoint_laplacian(x, y) + ex2_plateau(std::hypot(x, y)) + ex2_multiplier(x, y);
  };
  // The closed forms solve the beta = 0 problem only.
  if (beta == 0.0) {
    s.exact = ExactBundle{
        [](double x, double y) { return ex2_control(x, y); },
        [](double x, double y) { return ex2_plateau(std::hypot(x, y)); },
        [](double x, double y) { return ex2_adjoint(x, y); },
        [](double x, double y) { return ex2_multiplier(x, y); },
    };
  }
  return s;
}

ProblemSpec example3() {
  ProblemSpec s;
  s.name = "example3";
  s.dim = 2;
  s.lo = {0.0, 0.0};
  s.hi = {1.0, 1.0};
  s.beta = 1e-3;
  s.lower = constant(-1.0);
  s.upper = constant(1.0);
  s.obstacle = constant(0.01);
  s.target = [](double x, double y) {
    return std::sin(M_PI * x) * std::sin(M_PI * y) / (2.0 * M_PI);
  };
  s.source = constant(0.0);
  return s;
}

ProblemSpec tikhonov_sanity() {
  ProblemSpec s;
  s.name = "tikhonov_sanity";
  s.dim = 1;
  s.lo = {0.0, 0.0};
  s.hi = {1.0, 0.0};
  s.beta = 0.5;
  s.lower = constant(-1.0);
  s.upper = constant(1.0);
  s.obstacle = constant(1e6);
  s.target = [](double x, double) { return std::sin(M_PI * x); };
  s.source = constant(0.0);
  return s;
}

ProblemSpec make_problem(const std::string& name, std::optional<double> beta_override) {
  ProblemSpec s;
  if (name == "example1") {
    s = example1();
    if (beta_override && *beta_override != s.beta) {
      s.beta = *beta_override;
      s.exact.reset();  // the construction solves the beta = 1 objective
    }
    return s;
  }
  if (name == "example2_rect") return example2_rect(beta_override.value_or(0.1));
  if (name == "example3") {
    s = example3();
    if (beta_override) s.beta = *beta_override;
    return s;
  }
  if (name == "tikhonov_sanity") {
    s = tikhonov_sanity();
    if (beta_override) s.beta = *beta_override;
    return s;
  }
  throw std::invalid_argument("unknown problem name '" + name +
                              "' (expected example1, example2_rect, example3, tikhonov_sanity)");
}

}  // namespace auglag
