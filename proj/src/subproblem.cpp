#include "auglag/subproblem.hpp"

#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace auglag {

namespace {

void check_subproblem_inputs(const DiscreteProblem& dp, double alpha, double rho,
                             const GridFunction& mu) {
  if (!(alpha > 0.0)) throw std::invalid_argument("subproblem: alpha must be positive");
  if (!(rho > 0.0)) throw std::invalid_argument("subproblem: rho must be positive");
  if (!(dp.beta > 0.0)) throw std::invalid_argument("subproblem: beta must be positive");
  if (mu.size() != dp.grid.size()) throw std::invalid_argument("subproblem: mu size mismatch");
  if ((mu.array() < 0.0).any()) throw std::invalid_argument("subproblem: mu must be nonnegative");
}

GridFunction clamp_to_box(const GridFunction& v, const GridFunction& lo, const GridFunction& hi) {
  return v.cwiseMax(lo).cwiseMin(hi);
}

/// Coupled linear system in (y, p) for fixed index sets, interleaved as
/// z = (y_0, p_0, y_1, p_1, ...):
///   state row:   (A y)_i + [free] p_i / alpha = f_i + u_i^fix - [free] xi_i / alpha
///   adjoint row: -(A p)_i + (1 + rho [mask]) y_i = y_d,i - [mask] (mu_i - rho psi_i)
/// Solved by sparse LU with partial pivoting. One round of iterative
/// refinement always runs: the penalty mask decisions compare
/// mu + rho (y - psi) against zero, so y needs forward accuracy well below
/// O(1/rho), beyond what a single pivoted solve guarantees at large rho.
/// The coupling entries are inserted structurally for every node so the
/// sparsity pattern is set-independent and the symbolic analysis can be
/// reused across iterations.
class CoupledKkt {
 public:
  CoupledKkt(const DiscreteProblem& dp, const EllipticOperator& op, double alpha, double rho,
             const GridFunction& mu)
      : dp_(dp), op_(op), alpha_(alpha), rho_(rho), mu_(mu) {}

  KktPoint solve(const ActiveSets& sets) {
    const int n = dp_.grid.size();
    const double beta = dp_.beta;
    const auto& a = op_.matrix();

    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(2 * a.nonZeros() + 2 * n);
    for (int col = 0; col < a.outerSize(); ++col) {
      for (Eigen::SparseMatrix<double>::InnerIterator it(a, col); it; ++it) {
        trips.emplace_back(2 * static_cast<int>(it.row()), 2 * col, it.value());
        trips.emplace_back(2 * static_cast<int>(it.row()) + 1, 2 * col + 1, -it.value());
      }
    }
    Eigen::VectorXd rhs(2 * n);
    for (int i = 0; i < n; ++i) {
      const bool free_node = sets.free_neg[i] || sets.free_pos[i];
      const double xi_fix = sets.free_neg[i] ? -beta : beta;
      double u_fix = 0.0;
      if (sets.at_lower[i]) u_fix = dp_.lower[i];
      if (sets.at_upper[i]) u_fix = dp_.upper[i];
      trips.emplace_back(2 * i, 2 * i + 1, free_node ? 1.0 / alpha_ : 0.0);
      rhs[2 * i] = dp_.source[i] + (free_node ? -xi_fix / alpha_ : u_fix);
      const double mask = sets.penalty_active[i] ? 1.0 : 0.0;
      trips.emplace_back(2 * i + 1, 2 * i, 1.0 + rho_ * mask);
      rhs[2 * i + 1] = dp_.target[i] - mask * (mu_[i] - rho_ * dp_.obstacle[i]);
    }
    Eigen::SparseMatrix<double> m(2 * n, 2 * n);
    m.setFromTriplets(trips.begin(), trips.end());
    m.makeCompressed();

    if (!analyzed_) {
      lu_.analyzePattern(m);
      analyzed_ = true;
    }
    lu_.factorize(m);
    if (lu_.info() != Eigen::Success)
      throw std::runtime_error("solve_kkt_on_sets: singular reduced system");

    Eigen::VectorXd z = lu_.solve(rhs);
    z += lu_.solve(rhs - m * z);

    const double m_norm = op_.matrix_norm_inf() + std::max(1.0 / alpha_, 1.0 + rho_);
    double residual = (m * z - rhs).norm();
    for (int round = 0; round < 4; ++round) {
      if (residual <= op_.linear_tol() * (m_norm * z.norm() + rhs.norm())) break;
      z += lu_.solve(rhs - m * z);
      residual = (m * z - rhs).norm();
    }
    if (residual > op_.linear_tol() * (m_norm * z.norm() + rhs.norm())) {
      std::ostringstream msg;
      msg << "solve_kkt_on_sets: linear residual " << residual
          << " not reducible below tolerance";
      throw std::runtime_error(msg.str());
    }

    KktPoint pt;
    pt.y.resize(n);
    pt.p.resize(n);
    for (int i = 0; i < n; ++i) {
      pt.y[i] = z[2 * i];
      pt.p[i] = z[2 * i + 1];
    }
    pt.u.resize(n);
    pt.xi.resize(n);
    pt.mu.resize(n);
    for (int i = 0; i < n; ++i) {
      if (sets.at_lower[i]) {
        pt.u[i] = dp_.lower[i];
      } else if (sets.at_upper[i]) {
        pt.u[i] = dp_.upper[i];
      } else if (sets.at_zero[i]) {
        pt.u[i] = 0.0;
      } else {
        const double xi_fix = sets.free_neg[i] ? -beta : beta;
        pt.u[i] = -(pt.p[i] + xi_fix) / alpha_;
      }
      pt.xi[i] = (sets.free_neg[i] || sets.free_pos[i]) ? (sets.free_neg[i] ? -beta : beta)
                                                        : -pt.p[i] - alpha_ * pt.u[i];
      pt.mu[i] = sets.penalty_active[i] ? mu_[i] + rho_ * (pt.y[i] - dp_.obstacle[i]) : 0.0;
    }
    return pt;
  }

 private:
  const DiscreteProblem& dp_;
  const EllipticOperator& op_;
  double alpha_, rho_;
  const GridFunction& mu_;
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu_;
  bool analyzed_ = false;
};

}  // namespace

bool ActiveSets::is_partition() const {
  for (std::size_t i = 0; i < at_lower.size(); ++i) {
    const int total = at_lower[i] + at_zero[i] + at_upper[i] + free_neg[i] + free_pos[i];
    if (total != 1) return false;
  }
  return true;
}

ActiveSets classify_sets(const GridFunction& p, const GridFunction& y, const GridFunction& mu,
                         double alpha, double rho, const DiscreteProblem& dp) {
  const int n = dp.grid.size();
  if (p.size() != n || y.size() != n || mu.size() != n)
    throw std::invalid_argument("classify_sets: size mismatch");
  const double beta = dp.beta;
  ActiveSets s;
  s.at_lower.assign(n, 0);
  s.at_zero.assign(n, 0);
  s.at_upper.assign(n, 0);
  s.free_neg.assign(n, 0);
  s.free_pos.assign(n, 0);
  s.penalty_active.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    if (p[i] > beta - alpha * dp.lower[i]) {
      s.at_lower[i] = 1;
    } else if (p[i] < -alpha * dp.upper[i] - beta) {
      s.at_upper[i] = 1;
    } else if (std::abs(p[i]) < beta) {
      s.at_zero[i] = 1;
    } else if (p[i] >= beta) {
      s.free_neg[i] = 1;
    } else {
      s.free_pos[i] = 1;
    }
    s.penalty_active[i] = (mu[i] + rho * (y[i] - dp.obstacle[i]) > 0.0) ? 1 : 0;
  }
  return s;
}

KktPoint solve_kkt_on_sets(const ActiveSets& sets, const DiscreteProblem& dp,
                           const EllipticOperator& op, double alpha, double rho,
                           const GridFunction& mu) {
  check_subproblem_inputs(dp, alpha, rho, mu);
  if (sets.size() != dp.grid.size() || !sets.is_partition())
    throw std::invalid_argument("solve_kkt_on_sets: sets do not partition the nodes");
  CoupledKkt kkt(dp, op, alpha, rho, mu);
  return kkt.solve(sets);
}

SubproblemResult inner_solve(const DiscreteProblem& dp, const EllipticOperator& op, double alpha,
                             double rho, const GridFunction& mu, const GridFunction& u0,
                             const GridFunction& p0, int max_iterations) {
  check_subproblem_inputs(dp, alpha, rho, mu);
  const int n = dp.grid.size();
  if (u0.size() != n || p0.size() != n)
    throw std::invalid_argument("inner_solve: start iterate size mismatch");
  if (max_iterations < 1) throw std::invalid_argument("inner_solve: max_iterations must be >= 1");

  GridFunction y0 = solve_state(op, clamp_to_box(u0, dp.lower, dp.upper), dp.source);
  ActiveSets sets = classify_sets(p0, y0, mu, alpha, rho, dp);

  CoupledKkt kkt(dp, op, alpha, rho, mu);
  SubproblemResult res;
  KktPoint pt;
  for (int it = 1; it <= max_iterations; ++it) {
    pt = kkt.solve(sets);
    res.iterations = it;
    ActiveSets next = classify_sets(pt.p, pt.y, mu, alpha, rho, dp);
    if (next == sets) {
      res.converged = true;
      break;
    }
    sets = std::move(next);
  }

  res.sets = std::move(sets);
  res.y = std::move(pt.y);
  res.p = std::move(pt.p);
  res.xi = std::move(pt.xi);
  res.u = clamp_to_box(pt.u, dp.lower, dp.upper);
  res.mu = (mu.array() + rho * (res.y - dp.obstacle).array()).max(0.0).matrix();
  res.lambda = (res.xi / dp.beta).cwiseMax(-1.0).cwiseMin(1.0);
  return res;
}

double penalty_value(const Grid& grid, const GridFunction& y, double rho, const GridFunction& mu,
                     const GridFunction& psi) {
  if (y.size() != grid.size() || mu.size() != grid.size() || psi.size() != grid.size())
    throw std::invalid_argument("penalty_value: size mismatch");
  const auto shifted = (mu.array() + rho * (y - psi).array()).max(0.0);
  return grid.weight() / (2.0 * rho) * (shifted.square() - mu.array().square()).sum();
}

double subproblem_objective(const DiscreteProblem& dp, double alpha, double rho,
                            const GridFunction& mu, const GridFunction& u, const GridFunction& y) {
  const Grid& g = dp.grid;
  const double track = 0.5 * g.weight() * (y - dp.target).squaredNorm();
  const double l1 = dp.beta * g.weight() * u.cwiseAbs().sum();
  const double tik = 0.5 * alpha * g.weight() * u.squaredNorm();
  return track + l1 + tik + penalty_value(g, y, rho, mu, dp.obstacle);
}

double prox_l1_box(double v, double threshold, double lo, double hi) {
  const double soft = v > threshold ? v - threshold : (v < -threshold ? v + threshold : 0.0);
  return std::min(hi, std::max(lo, soft));
}

ProxResult prox_gradient(const DiscreteProblem& dp, const EllipticOperator& op, double alpha,
                         double rho, const GridFunction& mu, const GridFunction& u0,
                         int max_iterations, double tol) {
  check_subproblem_inputs(dp, alpha, rho, mu);
  const int n = dp.grid.size();
  if (u0.size() != n) throw std::invalid_argument("prox_gradient: start size mismatch");

  GridFunction u = clamp_to_box(u0, dp.lower, dp.upper);
  GridFunction y = solve_state(op, u, dp.source);
  double obj = subproblem_objective(dp, alpha, rho, mu, u, y);

  const double lam_min = laplacian_min_eigenvalue(dp.grid);
  const double solve_norm2 = 1.0 / (lam_min * lam_min);
  const bool penalty_on = ((mu.array() + rho * (y - dp.obstacle).array()) > 0.0).any();
  double step = 1.0 / (alpha + solve_norm2 * (1.0 + (penalty_on ? rho : 0.0)));
  const double step_cap = 1.0 / (alpha + solve_norm2);
  constexpr double kDecrease = 1e-4;

  ProxResult res;
  res.objective_history.push_back(obj);

  auto prox_step = [&](const GridFunction& grad, double s) {
    GridFunction out(n);
    for (int i = 0; i < n; ++i)
      out[i] = prox_l1_box(u[i] - s * grad[i], s * dp.beta, dp.lower[i], dp.upper[i]);
    return out;
  };

  for (int it = 1; it <= max_iterations; ++it) {
    res.iterations = it;
    const GridFunction mu_shift = (mu.array() + rho * (y - dp.obstacle).array()).max(0.0).matrix();
    const GridFunction p = solve_adjoint(op, y - dp.target + mu_shift);
    const GridFunction grad = p + alpha * u;

    GridFunction cand;
    GridFunction y_cand;
    double obj_cand = obj;
    double diff2 = 0.0;
    bool accepted = false;
    for (int cut = 0; cut < 60; ++cut) {
      cand = prox_step(grad, step);
      diff2 = (cand - u).squaredNorm() * dp.grid.weight();
      if (diff2 == 0.0) break;  // exact fixed point at this step size
      y_cand = solve_state(op, cand, dp.source);
      obj_cand = subproblem_objective(dp, alpha, rho, mu, cand, y_cand);
      if (obj_cand <= obj - kDecrease / step * diff2) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }

    res.residual = std::sqrt(diff2);
    if (res.residual <= tol) {
      res.u = std::move(u);
      return res;
    }
    if (!accepted) break;  // step floor reached; return best iterate so far

    u = std::move(cand);
    y = std::move(y_cand);
    obj = obj_cand;
    res.objective_history.push_back(obj);
    step = std::min(step * 1.5, step_cap);
  }

  res.u = std::move(u);
  return res;
}

}  // namespace auglag
