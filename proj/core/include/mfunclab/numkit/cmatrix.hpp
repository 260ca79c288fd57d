// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace mfunclab {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

/// Small dense complex matrix stored row-major.
///
/// Every boundary-level object in the library (boundary trace matrices, the
/// Dirichlet-to-Neumann matrix, M-functions, realization parameters) is one of
/// these; sizes are 1..8 in practice, so no attempt is made at blocking.
class CMatrix {
 public:
  CMatrix() = default;
  /// Zero matrix.
  CMatrix(std::size_t rows, std::size_t cols);
  /// Throws InvalidArgument if the entry count does not match or any entry is not finite.
  CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  CMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static CMatrix identity(std::size_t n);
  static CMatrix diagonal(std::span<const Complex> diag);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const Complex> entries() const noexcept { return data_; }
  std::span<Complex> entries() noexcept { return data_; }

  CVector column(std::size_t j) const;
  CVector row(std::size_t i) const;

  CMatrix transpose() const;
  CMatrix adjoint() const;

  /// Maximum absolute row sum.
  double norm_inf() const;
  double max_abs() const;
  bool all_finite() const;

  CMatrix& operator+=(const CMatrix& other);
  CMatrix& operator-=(const CMatrix& other);
  CMatrix& operator*=(Complex s);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

CMatrix operator+(CMatrix lhs, const CMatrix& rhs);
CMatrix operator-(CMatrix lhs, const CMatrix& rhs);
CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs);
CMatrix operator*(Complex s, CMatrix m);
CVector operator*(const CMatrix& m, std::span<const Complex> v);

double norm_inf(std::span<const Complex> v);

}  // namespace mfunclab
