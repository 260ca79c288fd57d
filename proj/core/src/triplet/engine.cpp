// SPDX-License-Identifier: Apache-2.0

#include "mfunclab/triplet/engine.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "mfunclab/error.hpp"

namespace mfunclab::triplet {

namespace {

CMatrix stacked(const BoundaryTraces& traces) {
  const std::size_t d = traces.gamma0.rows();
  CMatrix s(2 * d, traces.gamma0.cols());
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < s.cols(); ++j) {
      s(i, j) = traces.gamma0(i, j);
      s(d + i, j) = traces.gamma1(i, j);
    }
  return s;
}

void check_dimension(const BoundaryTraces& traces, const BoundaryRealization& realization) {
  if (traces.gamma0.rows() != realization.dimension() ||
      traces.gamma1.rows() != realization.dimension()) {
    throw Error(ErrorCode::InvalidRealization,
                "realization dimension " + std::to_string(realization.dimension()) +
                    " differs from the defect dimension " +
                    std::to_string(traces.gamma0.rows()));
  }
}

}  // namespace

CMatrix dtn_matrix(const BoundaryTraces& traces, const LinearOptions& opts) {
  const LuFactorization lu(traces.gamma0, opts);
  if (lu.singular() || !(lu.condition_inf() <= opts.cond_cap)) {
    throw Error(ErrorCode::DirichletSpectrum,
                "Gamma_0 is not invertible on the kernel; lambda lies in the reference spectrum");
  }
  // P Y0 = Y1  <=>  Y0^T P^T = Y1^T.
  const LuFactorization lut(traces.gamma0.transpose(), opts);
  return lut.solve(traces.gamma1.transpose()).transpose();
}

CMatrix dtn_matrix(const ProblemBackend& backend, Complex lambda, const LinearOptions& opts) {
  return dtn_matrix(backend.kernel_traces(lambda), opts);
}

MSample mfunction_from_traces(const BoundaryTraces& traces, const BoundaryRealization& realization,
                              Complex lambda, const LinearOptions& opts) {
  check_dimension(traces, realization);
  MSample s;
  s.lambda = lambda;
  const std::size_t r = realization.reduced_dimension();
  if (r == 0) {
    s.m = CMatrix(0, 0);
    s.boundary_matrix = CMatrix(0, 0);
    return s;
  }
  const CMatrix p = dtn_matrix(traces, opts);
  CMatrix k = realization.kind() == BoundaryRealization::Kind::Matrix
                  ? p - realization.parameter()
                  : realization.y_restriction() * p * realization.x_embedding() -
                        realization.parameter();
  const LuFactorization lu(k, opts);
  if (lu.singular()) {
    throw Error(ErrorCode::SpectralPoint, "boundary matrix is singular at this lambda");
  }
  s.m = inverse(k, opts);
  s.cond = k.norm_inf() * s.m.norm_inf();
  if (!(s.cond <= opts.cond_cap) || !s.m.all_finite()) {
    throw Error(ErrorCode::SpectralPoint,
                "boundary matrix condition " + std::to_string(s.cond) + " above cap");
  }
  s.boundary_matrix = std::move(k);
  return s;
}

MSample mfunction(const ProblemBackend& backend, const BoundaryRealization& realization,
                  Complex lambda, const LinearOptions& opts) {
  return mfunction_from_traces(backend.kernel_traces(lambda), realization, lambda, opts);
}

MSample subspace_mfunction(const ProblemBackend& backend, const BoundaryRealization& realization,
                           Complex lambda, const LinearOptions& opts) {
  if (realization.kind() != BoundaryRealization::Kind::Subspace) {
    throw Error(ErrorCode::InvalidRealization, "subspace_mfunction needs a subspace realization");
  }
  return mfunction(backend, realization, lambda, opts);
}

CMatrix characteristic_matrix(const BoundaryTraces& traces,
                              const BoundaryRealization& realization) {
  check_dimension(traces, realization);
  return realization.condition_rows() * stacked(traces);
}

Complex characteristic_determinant(const ProblemBackend& backend,
                                   const BoundaryRealization& realization, Complex lambda) {
  return det(characteristic_matrix(backend.kernel_traces(lambda), realization));
}

CMatrix mfunction_via_characteristic(const BoundaryTraces& traces,
                                     const BoundaryRealization& realization,
                                     const LinearOptions& opts) {
  const CMatrix c = characteristic_matrix(traces, realization);
  const LuFactorization lu(c, opts);
  if (lu.singular()) {
    throw Error(ErrorCode::SpectralPoint, "characteristic matrix is singular at this lambda");
  }
  const std::size_t d = realization.dimension();
  const std::size_t r = realization.reduced_dimension();
  CMatrix tail(d, r);
  for (std::size_t q = 0; q < r; ++q) tail(d - r + q, q) = 1.0;
  return realization.x_embedding().transpose() * traces.gamma0 * lu.solve(tail);
}

CVector adjoint_pairings(const ProblemBackend& backend, Complex lambda, const GridFunction& f) {
  const KernelBasis adj = backend.adjoint_kernel_basis(std::conj(lambda));
  const LuFactorization lu(adj.traces.gamma0);
  if (lu.singular()) {
    throw Error(ErrorCode::DirichletSpectrum,
                "adjoint kernel traces are singular; conj(lambda) is a reference eigenvalue");
  }
  const CMatrix normalize = lu.inverse();
  const std::size_t d = adj.elements.size();
  CVector raw(d);
  for (std::size_t j = 0; j < d; ++j) raw[j] = quad_inner(f, adj.elements[j]);
  CVector w(d);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t j = 0; j < d; ++j) w[k] += std::conj(normalize(j, k)) * raw[j];
  return w;
}

GridFunction krein_apply(const ProblemBackend& backend, const BoundaryRealization& realization,
                         Complex lambda, const GridFunction& f) {
  GridFunction out = backend.reference_resolvent(lambda, f);
  if (realization.reduced_dimension() == 0) return out;
  const MSample sample = mfunction(backend, realization, lambda);
  const CVector w = adjoint_pairings(backend, lambda, f);
  const CVector reduced = realization.y_restriction() * w;
  CVector phi = realization.x_embedding() * (sample.m * reduced);
  for (auto& z : phi) z = -z;
  out += backend.poisson(lambda, phi);
  return out;
}

double holomorphy_residual(const MatrixSampler& sampler, const Circle& contour) {
  if (contour.nodes == 0 || !(contour.radius > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "contour needs positive radius and nodes");
  }
  CMatrix sum;
  for (std::size_t k = 0; k < contour.nodes; ++k) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) /
                         static_cast<double>(contour.nodes);
    const Complex e = std::polar(1.0, theta);
    CMatrix value;
    try {
      value = sampler(contour.center + contour.radius * e);
    } catch (const std::exception& ex) {
      throw Error(ErrorCode::SamplerFailed, "node " + std::to_string(k) + ": " + ex.what());
    }
    value *= e;
    if (k == 0) {
      sum = std::move(value);
    } else {
      sum += value;
    }
  }
  // (1 / 2 pi i) * sum_k M_k * i r e_k * (2 pi / N)
  sum *= contour.radius / static_cast<double>(contour.nodes);
  return sum.norm_inf();
}

}  // namespace mfunclab::triplet
