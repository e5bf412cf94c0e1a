#include "auglag/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace auglag {

Grid Grid::interval(double a, double b, int cells) {
  if (!(b > a)) throw std::invalid_argument("Grid: interval endpoints must satisfy a < b");
  if (cells < 4) throw std::invalid_argument("Grid: need at least 4 cells per axis");
  Grid g;
  g.dim_ = 1;
  g.cells_ = {cells, 0};
  g.nodes_ = {cells - 1, 0};
  g.lo_ = {a, 0.0};
  g.hi_ = {b, 0.0};
  g.h_ = {(b - a) / cells, 0.0};
  return g;
}

Grid Grid::rectangle(double ax, double bx, double ay, double by, int cells_x, int cells_y) {
  if (!(bx > ax) || !(by > ay))
    throw std::invalid_argument("Grid: rectangle corners must satisfy lo < hi per axis");
  if (cells_x < 4 || cells_y < 4)
    throw std::invalid_argument("Grid: need at least 4 cells per axis");
  Grid g;
  g.dim_ = 2;
  g.cells_ = {cells_x, cells_y};
  g.nodes_ = {cells_x - 1, cells_y - 1};
  g.lo_ = {ax, ay};
  g.hi_ = {bx, by};
  g.h_ = {(bx - ax) / cells_x, (by - ay) / cells_y};
  return g;
}

int Grid::size() const {
  return dim_ == 1 ? nodes_[0] : nodes_[0] * nodes_[1];
}

double Grid::weight() const {
  return dim_ == 1 ? h_[0] : h_[0] * h_[1];
}

double Grid::measure() const {
  return weight() * static_cast<double>(size());
}

std::array<double, 2> Grid::coord(int k) const {
  if (dim_ == 1) {
    return {lo_[0] + (k + 1) * h_[0], 0.0};
  }
  const int i = k % nodes_[0];
  const int j = k / nodes_[0];
  return {lo_[0] + (i + 1) * h_[0], lo_[1] + (j + 1) * h_[1]};
}

GridFunction Grid::evaluate(const ScalarField& f) const {
  GridFunction v(size());
  for (int k = 0; k < size(); ++k) {
    const auto x = coord(k);
    v[k] = f(x[0], x[1]);
  }
  return v;
}

double dot_h(const Grid& grid, const GridFunction& a, const GridFunction& b) {
  if (a.size() != grid.size() || b.size() != grid.size())
    throw std::invalid_argument("dot_h: grid function size mismatch");
  return grid.weight() * a.dot(b);
}

double norm_h(const Grid& grid, const GridFunction& a) {
  return std::sqrt(dot_h(grid, a, a));
}

double max_norm(const GridFunction& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

double max_positive_part(const GridFunction& a) {
  return a.size() == 0 ? 0.0 : std::max(0.0, a.maxCoeff());
}

}  // namespace auglag
