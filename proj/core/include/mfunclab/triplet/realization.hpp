// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <vector>

#include "mfunclab/numkit/cmatrix.hpp"

namespace mfunclab::triplet {

/// A boundary condition selecting a realization between A_min and A_max.
///
/// Matrix form:   Gamma_1 u = B Gamma_0 u.
/// Subspace form: Gamma_0 u in ran(selX) and selY Gamma_1 u = L1 selX Gamma_0 u,
/// with selX, selY diagonal 0/1 selectors of equal rank r and L1 an r x r
/// matrix acting between the selected coordinates.
class BoundaryRealization {
 public:
  enum class Kind { Matrix, Subspace };

  static BoundaryRealization matrix(CMatrix b);
  /// sel_x and sel_y are the selector diagonals, entries 0 or 1.
  static BoundaryRealization subspace(std::vector<int> sel_x, std::vector<int> sel_y, CMatrix l1);
  /// Validates that the selectors are diagonal with 0/1 entries.
  static BoundaryRealization subspace_from_selectors(const CMatrix& sel_x, const CMatrix& sel_y, CMatrix l1);

  /// Gamma_1 u = 0.
  static BoundaryRealization neumann(std::size_t d);
  /// Gamma_0 u = 0, the reference realization.
  static BoundaryRealization dirichlet(std::size_t d);

  Kind kind() const noexcept { return kind_; }
  std::size_t dimension() const noexcept { return d_; }
  /// d for the matrix form, r for the subspace form.
  std::size_t reduced_dimension() const noexcept { return x_idx_.size(); }

  /// B of the matrix form; L1 of the subspace form (the full-space reading is
  /// the same matrix).
  const CMatrix& parameter() const noexcept { return param_; }
  const std::vector<std::size_t>& x_indices() const noexcept { return x_idx_; }
  const std::vector<std::size_t>& y_indices() const noexcept { return y_idx_; }

  /// d x r embedding of the selected Gamma_0 coordinates.
  CMatrix x_embedding() const;
  /// r x d restriction to the selected Gamma_1 coordinates.
  CMatrix y_restriction() const;

  /// d x 2d matrix R with R [Gamma_0 u; Gamma_1 u] = 0 exactly on the
  /// realization's domain. Rows for the unselected Gamma_0 coordinates come
  /// first, then the r reduced rows.
  CMatrix condition_rows() const;

 private:
  BoundaryRealization() = default;

  Kind kind_ = Kind::Matrix;
  std::size_t d_ = 0;
  CMatrix param_;
  std::vector<std::size_t> x_idx_;
  std::vector<std::size_t> y_idx_;
};

}  // namespace mfunclab::triplet
