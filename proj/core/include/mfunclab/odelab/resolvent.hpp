// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "mfunclab/numkit/grid.hpp"
#include "mfunclab/odelab/coefficients.hpp"
#include "mfunclab/triplet/realization.hpp"

namespace mfunclab::odelab {

struct DirectResolventOptions {
  double den_eps = 1e-10;
  /// Combine the solutions on the grid and on every other point into a
  /// fourth-order approximation.
  bool extrapolate = true;
  double cond_cap = 1e14;
};

struct DirectSolution {
  GridFunction u;
  /// max |u_h - u_2h| / 3 over the coarse points, both components; NaN when
  /// the grid is too small to coarsen.
  double error_estimate;
};

/// Solves (A - lambda) w = f under the realization's boundary condition by
/// eliminating w2 = (f2 - b w1') / (c - lambda) and discretizing the scalar
/// equation for w1 with central differences. Throws SpectralPoint when the
/// boundary system is singular and CoefficientSingularity when lambda meets
/// ran(c) on the grid.
DirectSolution direct_resolvent_solve(const Coefficients& coeffs,
                                      const triplet::BoundaryRealization& realization,
                                      Complex lambda, const GridFunction& f,
                                      const DirectResolventOptions& opts = {});

GridFunction direct_resolvent(const Coefficients& coeffs,
                              const triplet::BoundaryRealization& realization, Complex lambda,
                              const GridFunction& f, const DirectResolventOptions& opts = {});

/// (A - lambda) u by second-order central differences at interior points;
/// zero at the two endpoints.
GridFunction discrete_apply(const Coefficients& coeffs, Complex lambda, const GridFunction& u);

}  // namespace mfunclab::odelab
