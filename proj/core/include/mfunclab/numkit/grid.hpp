// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "mfunclab/numkit/cmatrix.hpp"

namespace mfunclab {

inline constexpr std::size_t kDefaultGridPoints = 4001;

/// Uniform grid x_k = k / (n - 1) on [0, 1] with an odd point count, so the
/// composite Simpson rule applies.
class Grid {
 public:
  explicit Grid(std::size_t n = kDefaultGridPoints);

  std::size_t size() const noexcept { return n_; }
  double spacing() const noexcept { return 1.0 / static_cast<double>(n_ - 1); }
  double operator[](std::size_t k) const noexcept;
  std::vector<double> points() const;

  /// Every other point; (n + 1) / 2 points, still odd only when (n - 1) % 4 == 0.
  Grid coarsened() const;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t n_;
};

using C2 = std::array<Complex, 2>;

/// A C^2-valued function sampled on a Grid; the discrete stand-in for a pair
/// (u1, u2) in the maximal domain.
class GridFunction {
 public:
  explicit GridFunction(Grid grid);
  GridFunction(Grid grid, std::vector<C2> values);

  static GridFunction sample(const Grid& grid, const std::function<C2(double)>& f);

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }
  C2& operator[](std::size_t k) { return values_[k]; }
  const C2& operator[](std::size_t k) const { return values_[k]; }
  std::span<const C2> values() const noexcept { return values_; }

  /// Component c (0 or 1) as a flat vector.
  CVector component(std::size_t c) const;

  GridFunction& operator+=(const GridFunction& other);
  GridFunction& operator-=(const GridFunction& other);
  GridFunction& operator*=(Complex s);

 private:
  Grid grid_;
  std::vector<C2> values_;
};

GridFunction operator+(GridFunction lhs, const GridFunction& rhs);
GridFunction operator-(GridFunction lhs, const GridFunction& rhs);
GridFunction operator*(Complex s, GridFunction f);

/// Composite Simpson approximation of \int_0^1 <f(x), g(x)>_{C^2} dx, linear in
/// f and conjugate-linear in g. Throws GridMismatch.
Complex quad_inner(const GridFunction& f, const GridFunction& g);

/// sqrt(quad_inner(f, f)).
double l2_norm(const GridFunction& f);

/// Composite Simpson weights for an odd-sized grid.
std::vector<double> simpson_weights(const Grid& grid);

}  // namespace mfunclab
