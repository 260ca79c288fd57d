// SPDX-License-Identifier: Apache-2.0

#include "mfunclab/numkit/linalg.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "mfunclab/error.hpp"

namespace mfunclab {

LuFactorization::LuFactorization(const CMatrix& a, const LinearOptions& opts)
    : lu_(a), perm_(a.rows()), norm_a_(a.norm_inf()) {
  if (!a.square()) throw Error(ErrorCode::InvalidArgument, "LU needs a square matrix");
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i) perm_[i] = i;
  const double tiny = opts.pivot_eps * norm_a_;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(lu_(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(lu_(i, k)) > best) {
        best = std::abs(lu_(i, k));
        p = i;
      }
    }
    if (best == 0.0 || best <= tiny) {
      singular_ = true;
      if (best == 0.0) det_ = 0.0;
    }
    if (best == 0.0) continue;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(p, j));
      std::swap(perm_[k], perm_[p]);
      det_ = -det_;
    }
    const Complex pivot = lu_(k, k);
    det_ *= pivot;
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex f = lu_(i, k) / pivot;
      lu_(i, k) = f;
      if (f == Complex{}) continue;
      for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= f * lu_(k, j);
    }
  }
}

CVector LuFactorization::solve(std::span<const Complex> b) const {
  if (singular_) throw Error(ErrorCode::SingularMatrix, "pivot below threshold");
  const std::size_t n = size();
  if (b.size() != n) throw Error(ErrorCode::InvalidArgument, "rhs length mismatch");
  CVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[perm_[i]];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) x[i] -= lu_(i, j) * x[j];
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = i + 1; j < n; ++j) x[i] -= lu_(i, j) * x[j];
    x[i] /= lu_(i, i);
  }
  return x;
}

CMatrix LuFactorization::solve(const CMatrix& b) const {
  CMatrix x(b.rows(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    const CVector col = solve(b.column(j));
    for (std::size_t i = 0; i < b.rows(); ++i) x(i, j) = col[i];
  }
  return x;
}

CMatrix LuFactorization::inverse() const { return solve(CMatrix::identity(size())); }

double LuFactorization::condition_inf() const {
  if (singular_) return std::numeric_limits<double>::infinity();
  return norm_a_ * inverse().norm_inf();
}

CVector solve_linear(const CMatrix& a, std::span<const Complex> b, const LinearOptions& opts) {
  const LuFactorization lu(a, opts);
  if (lu.singular()) throw Error(ErrorCode::SingularMatrix, "pivot below pivot_eps * ||A||");
  const double cond = lu.condition_inf();
  if (!(cond <= opts.cond_cap)) {
    throw Error(ErrorCode::SingularMatrix, "condition estimate " + std::to_string(cond) +
                                               " above cap " + std::to_string(opts.cond_cap));
  }
  CVector x = lu.solve(b);
  const CVector ax = a * x;
  double res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) res = std::max(res, std::abs(ax[i] - b[i]));
  const double scale = a.norm_inf() * norm_inf(x) + norm_inf(b);
  if (res > opts.tol_linear * scale) {
    throw Error(ErrorCode::SingularMatrix, "residual " + std::to_string(res) +
                                               " exceeds tolerance after elimination");
  }
  return x;
}

Complex det(const CMatrix& a) {
  LinearOptions exact;
  exact.pivot_eps = 0.0;
  return LuFactorization(a, exact).determinant();
}

CMatrix inverse(const CMatrix& a, const LinearOptions& opts) {
  const LuFactorization lu(a, opts);
  if (lu.singular()) throw Error(ErrorCode::SingularMatrix, "matrix not invertible");
  if (a.rows() == 2) {
    // Adjugate form: one rounding per entry, so X A - I stays near eps cond(A).
    const Complex d = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    if (d != Complex{}) return CMatrix{{a(1, 1) / d, -a(0, 1) / d}, {-a(1, 0) / d, a(0, 0) / d}};
  }
  return lu.inverse();
}

TridiagonalLu::TridiagonalLu(std::vector<Complex> sub, std::vector<Complex> diag,
                             std::vector<Complex> sup)
    : d_(std::move(diag)) {
  const std::size_t n = d_.size();
  if (sub.size() != n || sup.size() != n || n == 0) {
    throw Error(ErrorCode::InvalidArgument, "tridiagonal bands must have equal nonzero length");
  }
  // dl_[i] holds A(i+1, i); du1_[i] holds A(i, i+1).
  dl_.assign(sub.begin() + 1, sub.end());
  du1_.assign(sup.begin(), sup.end() - 1);
  du2_.assign(n > 2 ? n - 2 : 0, Complex{});
  swapped_.assign(n > 1 ? n - 1 : 0, 0);

  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(d_[i]) >= std::abs(dl_[i])) {
      if (d_[i] != Complex{}) {
        const Complex f = dl_[i] / d_[i];
        dl_[i] = f;
        d_[i + 1] -= f * du1_[i];
      }
    } else {
      const Complex f = d_[i] / dl_[i];
      d_[i] = dl_[i];
      dl_[i] = f;
      const Complex tmp = du1_[i];
      du1_[i] = d_[i + 1];
      d_[i + 1] = tmp - f * d_[i + 1];
      if (i + 2 < n) {
        du2_[i] = du1_[i + 1];
        du1_[i + 1] = -f * du1_[i + 1];
      }
      swapped_[i] = 1;
    }
  }
  for (const auto& p : d_) {
    if (p == Complex{}) throw Error(ErrorCode::SingularMatrix, "zero pivot in tridiagonal LU");
  }
}

CVector TridiagonalLu::solve(std::span<const Complex> rhs) const {
  const std::size_t n = d_.size();
  if (rhs.size() != n) throw Error(ErrorCode::InvalidArgument, "rhs length mismatch");
  CVector b(rhs.begin(), rhs.end());
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!swapped_[i]) {
      b[i + 1] -= dl_[i] * b[i];
    } else {
      const Complex tmp = b[i];
      b[i] = b[i + 1];
      b[i + 1] = tmp - dl_[i] * b[i];
    }
  }
  b[n - 1] /= d_[n - 1];
  if (n > 1) b[n - 2] = (b[n - 2] - du1_[n - 2] * b[n - 1]) / d_[n - 2];
  for (std::size_t i = n >= 2 ? n - 2 : 0; i-- > 0;) {
    b[i] = (b[i] - du1_[i] * b[i + 1] - du2_[i] * b[i + 2]) / d_[i];
  }
  return b;
}

}  // namespace mfunclab
