// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <utility>

#include "mfunclab/numkit/cmatrix.hpp"

namespace mfunclab::halfspace {

/// Frequency data of the constant-coefficient biharmonic model problem on the
/// half-space: rho = |xi'|, lambda = -mu^4 with mu in the sector |arg mu| < pi/4,
/// and c = c(xi') of the first-order boundary condition.
struct HalfspaceParams {
  double rho = 0.0;
  Complex mu{1.0, 0.0};
  Complex c{};

  static HalfspaceParams scalar(double rho, Complex mu, Complex c = {});
  /// c(xi') = i (b . xi') with xi' = rho * direction / |direction|; the
  /// direction defaults to the first axis.
  static HalfspaceParams from_bvec(double rho, Complex mu, std::span<const double> bvec,
                                   std::span<const double> direction = {});

  Complex lambda() const;
};

/// Throws SectorViolation when mu = 0 or |arg mu| >= pi/4 - 1e-12, and
/// InvalidArgument for a negative or non-finite rho.
void check_params(const HalfspaceParams& params);

struct SigmaPair {
  Complex plus;
  Complex minus;
};

/// sigma_pm = (rho^2 +- i mu^2)^{1/2}, principal branch.
SigmaPair sigma_pm(const HalfspaceParams& params);

/// (c1, c2) with c1 + c2 = phi0 and -sigma_+ c1 - sigma_- c2 = phi1, so that
/// v(t) = c1 exp(-sigma_+ t) + c2 exp(-sigma_- t) has v(0) = phi0, v'(0) = phi1.
std::pair<Complex, Complex> poisson_symbol_coeffs(const HalfspaceParams& params, Complex phi0,
                                                  Complex phi1);

/// v^{(k)}(0) of the decaying solution with Dirichlet data (phi0, phi1).
Complex poisson_derivative(const HalfspaceParams& params, Complex phi0, Complex phi1, int k);

/// (1/4)(s+ + s-) [[2 s+ s-, s+ + s-], [-(s+ + s-), -2]].
CMatrix dtn_symbol(const HalfspaceParams& params);

/// (d_n (rho^2 - d_n^2) v, (-rho^2 + d_n^2) v) at the boundary for the decaying
/// solution with Dirichlet data (phi0, phi1).
std::pair<Complex, Complex> neumann_traces(const HalfspaceParams& params, Complex phi0,
                                           Complex phi1);

/// l = c + (s+ + s-) / 2.
Complex l_symbol(const HalfspaceParams& params);

/// m = -1 / l. Throws SymbolPole when |l| < 1e-14.
Complex m_symbol(const HalfspaceParams& params);

}  // namespace mfunclab::halfspace
