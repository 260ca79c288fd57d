// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mfunclab/numkit/cmatrix.hpp"

namespace mfunclab {

struct LinearOptions {
  /// Relative residual target checked after every solve.
  double tol_linear = 1e-12;
  /// A pivot below pivot_eps * ||A||_inf is treated as zero.
  double pivot_eps = 1e-13;
  /// Upper bound on ||A||_inf ||A^-1||_inf accepted by solve_linear.
  double cond_cap = 1e14;
};

/// Partially pivoted LU factorization of a square matrix, P A = L U.
class LuFactorization {
 public:
  /// Never throws on singular input; check singular() before solving.
  explicit LuFactorization(const CMatrix& a, const LinearOptions& opts = {});

  bool singular() const noexcept { return singular_; }
  std::size_t size() const noexcept { return lu_.rows(); }

  /// Determinant with the permutation sign folded in. Exactly zero when a zero
  /// pivot was met.
  Complex determinant() const noexcept { return det_; }

  /// Throws SingularMatrix when singular().
  CVector solve(std::span<const Complex> b) const;
  /// Column-wise solve, A X = B.
  CMatrix solve(const CMatrix& b) const;
  CMatrix inverse() const;

  /// ||A||_inf ||A^-1||_inf; infinity when singular.
  double condition_inf() const;

 private:
  CMatrix lu_;
  std::vector<std::size_t> perm_;
  Complex det_{1.0, 0.0};
  double norm_a_ = 0.0;
  bool singular_ = false;
};

/// Solves A x = b. Throws SingularMatrix on a vanishing pivot, on a condition
/// estimate above opts.cond_cap, or when the residual bound
/// ||Ax-b|| <= tol (||A|| ||x|| + ||b||) is not met.
CVector solve_linear(const CMatrix& a, std::span<const Complex> b, const LinearOptions& opts = {});

Complex det(const CMatrix& a);

/// Throws SingularMatrix.
CMatrix inverse(const CMatrix& a, const LinearOptions& opts = {});

/// Factorization of a tridiagonal matrix with row interchanges (the banded
/// analogue of partial pivoting), reused for several right-hand sides.
class TridiagonalLu {
 public:
  /// sub[i] multiplies x[i-1] in row i (sub[0] ignored), sup[i] multiplies
  /// x[i+1] in row i (sup[n-1] ignored).
  TridiagonalLu(std::vector<Complex> sub, std::vector<Complex> diag, std::vector<Complex> sup);

  std::size_t size() const noexcept { return d_.size(); }
  CVector solve(std::span<const Complex> rhs) const;

 private:
  std::vector<Complex> dl_;   // multipliers
  std::vector<Complex> d_;    // U diagonal
  std::vector<Complex> du1_;  // U first superdiagonal
  std::vector<Complex> du2_;  // U second superdiagonal (fill-in from swaps)
  std::vector<char> swapped_;
};

}  // namespace mfunclab
