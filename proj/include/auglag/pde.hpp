#pragma once

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <memory>

#include "auglag/grid.hpp"

namespace auglag {

/// Finite-difference Laplacian A = -Δ with homogeneous Dirichlet boundary
/// (3-point stencil in 1D, 5-point in 2D), boundary nodes eliminated.
///
/// The matrix is assembled symmetric and positive definite. Solves are
/// prefactored at construction: a Thomas factorization of the tridiagonal
/// matrix in 1D, a sparse Cholesky factorization in 2D. Each solve checks
/// the residual against linear_tol and throws on failure.
class EllipticOperator {
 public:
  explicit EllipticOperator(const Grid& grid, double linear_tol = 1e-12);

  const Grid& grid() const { return grid_; }
  const Eigen::SparseMatrix<double>& matrix() const { return matrix_; }
  double matrix_norm_inf() const { return matrix_norm_inf_; }
  double linear_tol() const { return linear_tol_; }

  /// Solves A x = rhs. Throws std::runtime_error (carrying the residual)
  /// if the relative residual exceeds linear_tol.
  GridFunction solve(const GridFunction& rhs) const;

 private:
  GridFunction solve_once(const GridFunction& rhs) const;

  Grid grid_;
  double linear_tol_;
  Eigen::SparseMatrix<double> matrix_;
  double matrix_norm_inf_ = 0.0;
  // 1D Thomas factorization of the constant-coefficient tridiagonal matrix.
  std::vector<double> tri_cprime_;
  std::vector<double> tri_denom_;
  double tri_off_ = 0.0;
  std::unique_ptr<Eigen::SimplicialLLT<Eigen::SparseMatrix<double>>> llt_;
};

EllipticOperator assemble(const Grid& grid);

/// State equation A y = u + f.
GridFunction solve_state(const EllipticOperator& op, const GridFunction& u, const GridFunction& f);

/// Adjoint equation A* p = rhs. The discrete operator is symmetric and the
/// quadrature weight is uniform, so A* = A and the same solve applies.
GridFunction solve_adjoint(const EllipticOperator& op, const GridFunction& rhs);

/// Smallest eigenvalue of the discrete Laplacian, from the closed-form
/// spectrum of the uniform Dirichlet stencil.
double laplacian_min_eigenvalue(const Grid& grid);

}  // namespace auglag
