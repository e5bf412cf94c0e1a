#pragma once

#include <Eigen/Dense>

#include <array>
#include <functional>

namespace auglag {

/// Scalar field over the domain. 1D fields receive y = 0.
using ScalarField = std::function<double(double, double)>;

/// Values at the interior nodes of a Grid, in node order.
using GridFunction = Eigen::VectorXd;

/// Uniform tensor grid on an interval or an axis-aligned rectangle.
///
/// Homogeneous Dirichlet boundaries are eliminated, so only interior nodes
/// carry unknowns. Every interior node owns one cell of measure h (1D) or
/// hx*hy (2D); the strips next to the boundary belong to the eliminated
/// nodes, so measure() returns the covered measure (nodes_per_axis * h per
/// axis), not the measure of the closed domain. All discrete inner products
/// and norms use this uniform cell weight.
class Grid {
 public:
  Grid() = default;  // empty grid; build real ones with the named factories
  static Grid interval(double a, double b, int cells);
  static Grid rectangle(double ax, double bx, double ay, double by,
                        int cells_x, int cells_y);

  int dim() const { return dim_; }
  int cells(int axis) const { return cells_[axis]; }
  /// Interior nodes along one axis (= cells - 1).
  int nodes(int axis) const { return nodes_[axis]; }
  double spacing(int axis) const { return h_[axis]; }
  double low(int axis) const { return lo_[axis]; }
  double high(int axis) const { return hi_[axis]; }

  /// Total number of interior nodes.
  int size() const;
  /// Quadrature weight of a single node: h in 1D, hx*hy in 2D.
  double weight() const;
  /// Covered measure, weight() * size().
  double measure() const;

  /// Coordinates of interior node k (second entry is 0 in 1D).
  /// 2D nodes are ordered x-fastest: k = j * nodes(0) + i.
  std::array<double, 2> coord(int k) const;

  /// Evaluates a scalar field at every interior node.
  GridFunction evaluate(const ScalarField& f) const;

 private:
  int dim_ = 1;
  std::array<int, 2> cells_{0, 0};
  std::array<int, 2> nodes_{0, 0};
  std::array<double, 2> lo_{0.0, 0.0};
  std::array<double, 2> hi_{0.0, 0.0};
  std::array<double, 2> h_{0.0, 0.0};
};

/// Discrete L2 pairing (a,b)_h = w * sum_i a_i b_i.
double dot_h(const Grid& grid, const GridFunction& a, const GridFunction& b);
double norm_h(const Grid& grid, const GridFunction& a);
/// Discrete C(closure) norm: max over interior nodes.
double max_norm(const GridFunction& a);
/// max_i (a_i)_+ , zero when a <= 0 everywhere.
double max_positive_part(const GridFunction& a);

}  // namespace auglag
