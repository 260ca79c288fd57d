// SPDX-License-Identifier: Apache-2.0

#include "mfunclab/triplet/realization.hpp"

#include <string>

#include "mfunclab/error.hpp"

namespace mfunclab::triplet {

namespace {

std::vector<std::size_t> selected(const std::vector<int>& sel, const char* name) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < sel.size(); ++i) {
    if (sel[i] == 1) {
      idx.push_back(i);
    } else if (sel[i] != 0) {
      throw Error(ErrorCode::InvalidRealization,
                  std::string(name) + " selector entries must be 0 or 1");
    }
  }
  return idx;
}

std::vector<int> selector_diagonal(const CMatrix& sel, const char* name) {
  if (!sel.square()) {
    throw Error(ErrorCode::InvalidRealization, std::string(name) + " selector must be square");
  }
  std::vector<int> diag(sel.rows());
  for (std::size_t i = 0; i < sel.rows(); ++i) {
    for (std::size_t j = 0; j < sel.cols(); ++j) {
      const Complex v = sel(i, j);
      if (i != j && v != Complex{}) {
        throw Error(ErrorCode::InvalidRealization, std::string(name) + " selector must be diagonal");
      }
    }
    const Complex v = sel(i, i);
    if (v == Complex{1.0, 0.0}) {
      diag[i] = 1;
    } else if (v == Complex{}) {
      diag[i] = 0;
    } else {
      throw Error(ErrorCode::InvalidRealization,
                  std::string(name) + " selector diagonal must be 0 or 1");
    }
  }
  return diag;
}

}  // namespace

BoundaryRealization BoundaryRealization::matrix(CMatrix b) {
  if (!b.square() || b.rows() == 0) {
    throw Error(ErrorCode::InvalidRealization, "boundary matrix B must be square and nonempty");
  }
  BoundaryRealization r;
  r.kind_ = Kind::Matrix;
  r.d_ = b.rows();
  r.param_ = std::move(b);
  for (std::size_t i = 0; i < r.d_; ++i) {
    r.x_idx_.push_back(i);
    r.y_idx_.push_back(i);
  }
  return r;
}

BoundaryRealization BoundaryRealization::subspace(std::vector<int> sel_x, std::vector<int> sel_y,
                                                  CMatrix l1) {
  if (sel_x.size() != sel_y.size() || sel_x.empty()) {
    throw Error(ErrorCode::InvalidRealization, "selectors must have the same nonzero size");
  }
  BoundaryRealization r;
  r.kind_ = Kind::Subspace;
  r.d_ = sel_x.size();
  r.x_idx_ = selected(sel_x, "X");
  r.y_idx_ = selected(sel_y, "Y");
  if (r.x_idx_.size() != r.y_idx_.size()) {
    throw Error(ErrorCode::InvalidRealization,
                "selector ranks differ: " + std::to_string(r.x_idx_.size()) + " vs " +
                    std::to_string(r.y_idx_.size()));
  }
  const std::size_t rank = r.x_idx_.size();
  if (l1.rows() != rank || l1.cols() != rank) {
    throw Error(ErrorCode::InvalidRealization, "L1 must be " + std::to_string(rank) + "x" +
                                                   std::to_string(rank) + " for these selectors");
  }
  r.param_ = std::move(l1);
  return r;
}

BoundaryRealization BoundaryRealization::subspace_from_selectors(const CMatrix& sel_x, const CMatrix& sel_y,
                                                  CMatrix l1) {
  return subspace(selector_diagonal(sel_x, "X"), selector_diagonal(sel_y, "Y"), std::move(l1));
}

BoundaryRealization BoundaryRealization::neumann(std::size_t d) { return matrix(CMatrix(d, d)); }

BoundaryRealization BoundaryRealization::dirichlet(std::size_t d) {
  return subspace(std::vector<int>(d, 0), std::vector<int>(d, 0), CMatrix(0, 0));
}

CMatrix BoundaryRealization::x_embedding() const {
  CMatrix x(d_, x_idx_.size());
  for (std::size_t p = 0; p < x_idx_.size(); ++p) x(x_idx_[p], p) = 1.0;
  return x;
}

CMatrix BoundaryRealization::y_restriction() const {
  CMatrix y(y_idx_.size(), d_);
  for (std::size_t q = 0; q < y_idx_.size(); ++q) y(q, y_idx_[q]) = 1.0;
  return y;
}

CMatrix BoundaryRealization::condition_rows() const {
  CMatrix rows(d_, 2 * d_);
  std::size_t next = 0;
  std::vector<bool> in_x(d_, false);
  for (auto i : x_idx_) in_x[i] = true;
  for (std::size_t i = 0; i < d_; ++i) {
    if (!in_x[i]) rows(next++, i) = 1.0;
  }
  for (std::size_t q = 0; q < y_idx_.size(); ++q, ++next) {
    rows(next, d_ + y_idx_[q]) = 1.0;
    for (std::size_t p = 0; p < x_idx_.size(); ++p) rows(next, x_idx_[p]) -= param_(q, p);
  }
  return rows;
}

}  // namespace mfunclab::triplet
