// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>

#include "mfunclab/numkit/cmatrix.hpp"
#include "mfunclab/numkit/grid.hpp"
#include "mfunclab/numkit/linalg.hpp"
#include "mfunclab/triplet/backend.hpp"
#include "mfunclab/triplet/realization.hpp"

namespace mfunclab::triplet {

/// One evaluation of an M-function.
struct MSample {
  Complex lambda;
  /// (P_lambda - B)^{-1}, or the reduced (selY P_lambda selX - L1)^{-1}.
  CMatrix m;
  /// The matrix that was inverted, so that m * boundary_matrix == I.
  CMatrix boundary_matrix;
  /// ||boundary_matrix||_inf ||m||_inf.
  double cond = 0.0;
};

/// P_lambda with Gamma_1 z = P_lambda Gamma_0 z on ker(A_max - lambda).
/// Throws DirichletSpectrum when Gamma_0 restricted to the kernel is singular,
/// i.e. lambda is an eigenvalue of the reference realization.
CMatrix dtn_matrix(const ProblemBackend& backend, Complex lambda,
                   const LinearOptions& opts = {});
CMatrix dtn_matrix(const BoundaryTraces& traces, const LinearOptions& opts = {});

/// M_B(lambda) = (P_lambda - B)^{-1} for a matrix realization, the reduced
/// M_1(lambda) for a subspace realization. Throws SpectralPoint when the
/// boundary matrix is singular and propagates DirichletSpectrum.
MSample mfunction(const ProblemBackend& backend, const BoundaryRealization& realization,
                  Complex lambda, const LinearOptions& opts = {});

/// Subspace form only; maps Y1 coordinates to X1 coordinates.
MSample subspace_mfunction(const ProblemBackend& backend, const BoundaryRealization& realization,
                           Complex lambda, const LinearOptions& opts = {});

/// Same evaluation from already computed traces.
MSample mfunction_from_traces(const BoundaryTraces& traces,
                              const BoundaryRealization& realization, Complex lambda,
                              const LinearOptions& opts = {});

/// d x d matrix R [Y0; Y1] whose columns act on kernel-basis coefficients; it
/// is singular exactly when the realization has lambda as an eigenvalue. Its
/// determinant is entire in lambda, unlike det(P_lambda - B), which also
/// carries the poles of P_lambda at the reference spectrum.
CMatrix characteristic_matrix(const BoundaryTraces& traces,
                              const BoundaryRealization& realization);
Complex characteristic_determinant(const ProblemBackend& backend,
                                   const BoundaryRealization& realization, Complex lambda);

/// The M-function evaluated without forming P_lambda, as
/// selX^T Y0 R^{-1} restricted to the reduced rows. Finite at eigenvalues of the
/// reference realization. Throws SpectralPoint.
CMatrix mfunction_via_characteristic(const BoundaryTraces& traces,
                                     const BoundaryRealization& realization,
                                     const LinearOptions& opts = {});

/// Pairings w(f)_k = (f, v_k) against the adjoint kernel basis normalized to
/// Gamma'_0 v_k = e_k. By Green's formula this equals Gamma_1 of the reference
/// resolvent applied to f.
CVector adjoint_pairings(const ProblemBackend& backend, Complex lambda, const GridFunction& f);

/// Resolvent of the realization applied to f through the Krein formula
///   (A_B - lambda)^{-1} f = (A_ref - lambda)^{-1} f - K_lambda selX M selY w(f).
/// The minus sign belongs to the convention M = (P_lambda - B)^{-1}.
GridFunction krein_apply(const ProblemBackend& backend, const BoundaryRealization& realization,
                         Complex lambda, const GridFunction& f);

struct Circle {
  Complex center;
  double radius = 0.5;
  std::size_t nodes = 64;
};

using MatrixSampler = std::function<CMatrix(Complex)>;

/// ||(1 / 2 pi i) \oint M(lambda) dlambda||_inf by the trapezoid rule on
/// equispaced circle nodes. Near zero iff the disk holds no singularity of M.
/// Throws SamplerFailed if an evaluation fails.
double holomorphy_residual(const MatrixSampler& sampler, const Circle& contour);

}  // namespace mfunclab::triplet
