// SPDX-License-Identifier: Apache-2.0

#include "mfunclab/numkit/grid.hpp"

#include <cmath>
#include <string>

#include "mfunclab/error.hpp"

namespace mfunclab {

Grid::Grid(std::size_t n) : n_(n) {
  if (n < 3 || n % 2 == 0) {
    throw Error(ErrorCode::InvalidArgument,
                "grid needs an odd number of points >= 3, got " + std::to_string(n));
  }
}

double Grid::operator[](std::size_t k) const noexcept {
  if (k + 1 == n_) return 1.0;
  return static_cast<double>(k) / static_cast<double>(n_ - 1);
}

std::vector<double> Grid::points() const {
  std::vector<double> x(n_);
  for (std::size_t k = 0; k < n_; ++k) x[k] = (*this)[k];
  return x;
}

Grid Grid::coarsened() const {
  const std::size_t m = (n_ + 1) / 2;
  if (m < 3 || m % 2 == 0) {
    throw Error(ErrorCode::InvalidArgument,
                "grid of " + std::to_string(n_) + " points has no odd coarsening");
  }
  return Grid(m);
}

GridFunction::GridFunction(Grid grid) : grid_(grid), values_(grid.size(), C2{}) {}

GridFunction::GridFunction(Grid grid, std::vector<C2> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw Error(ErrorCode::GridMismatch, "value count " + std::to_string(values_.size()) +
                                             " differs from grid size " +
                                             std::to_string(grid_.size()));
  }
}

GridFunction GridFunction::sample(const Grid& grid, const std::function<C2(double)>& f) {
  std::vector<C2> v(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) v[k] = f(grid[k]);
  return GridFunction(grid, std::move(v));
}

CVector GridFunction::component(std::size_t c) const {
  CVector out(values_.size());
  for (std::size_t k = 0; k < values_.size(); ++k) out[k] = values_[k][c];
  return out;
}

GridFunction& GridFunction::operator+=(const GridFunction& other) {
  if (!(grid_ == other.grid_)) throw Error(ErrorCode::GridMismatch, "sum of grid functions");
  for (std::size_t k = 0; k < values_.size(); ++k) {
    values_[k][0] += other.values_[k][0];
    values_[k][1] += other.values_[k][1];
  }
  return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& other) {
  if (!(grid_ == other.grid_)) throw Error(ErrorCode::GridMismatch, "difference of grid functions");
  for (std::size_t k = 0; k < values_.size(); ++k) {
    values_[k][0] -= other.values_[k][0];
    values_[k][1] -= other.values_[k][1];
  }
  return *this;
}

GridFunction& GridFunction::operator*=(Complex s) {
  for (auto& v : values_) {
    v[0] *= s;
    v[1] *= s;
  }
  return *this;
}

GridFunction operator+(GridFunction lhs, const GridFunction& rhs) { return lhs += rhs; }
GridFunction operator-(GridFunction lhs, const GridFunction& rhs) { return lhs -= rhs; }
GridFunction operator*(Complex s, GridFunction f) { return f *= s; }

std::vector<double> simpson_weights(const Grid& grid) {
  const std::size_t n = grid.size();
  const double h = grid.spacing();
  std::vector<double> w(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (k == 0 || k + 1 == n) {
      w[k] = h / 3.0;
    } else {
      w[k] = (k % 2 == 1 ? 4.0 : 2.0) * h / 3.0;
    }
  }
  return w;
}

Complex quad_inner(const GridFunction& f, const GridFunction& g) {
  if (!(f.grid() == g.grid())) {
    throw Error(ErrorCode::GridMismatch, "quad_inner on grids of size " +
                                             std::to_string(f.grid().size()) + " and " +
                                             std::to_string(g.grid().size()));
  }
  const std::vector<double> w = simpson_weights(f.grid());
  Complex sum{};
  for (std::size_t k = 0; k < w.size(); ++k) {
    sum += w[k] * (f[k][0] * std::conj(g[k][0]) + f[k][1] * std::conj(g[k][1]));
  }
  return sum;
}

double l2_norm(const GridFunction& f) { return std::sqrt(std::max(0.0, quad_inner(f, f).real())); }

}  // namespace mfunclab
