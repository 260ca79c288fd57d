// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "mfunclab/numkit/grid.hpp"
#include "mfunclab/odelab/coefficients.hpp"
#include "mfunclab/odelab/essential.hpp"
#include "mfunclab/odelab/kernel.hpp"
#include "mfunclab/triplet/backend.hpp"

namespace mfunclab::odelab {

struct OdeBackendOptions {
  KernelOptions kernel{};
  double tube_eps = 0.05;
};

/// The 2 x 2 system on [0, 1] as a triplet backend. Gamma_0 u = (u1(1), u1(0)),
/// so the reference realization carries Dirichlet conditions on u1.
class OdeBackend final : public triplet::ProblemBackend {
 public:
  explicit OdeBackend(Coefficients coeffs, Grid grid = Grid(), OdeBackendOptions opts = {});

  std::size_t defect_dimension() const override { return 2; }
  const Grid& grid() const override { return grid_; }

  triplet::BoundaryTraces kernel_traces(Complex lambda) const override;
  triplet::KernelBasis kernel_basis(Complex lambda) const override;
  /// Solutions of (A' - mu) v = 0 with
  ///   A' v = (-v1'' - (conj(b) v2)', -(conj(a) v1)' + conj(c) v2),
  /// Gamma'_0 v = (v1(1), v1(0)), Gamma'_1 v = (-q(1), q(0)), q = v1' + conj(b) v2.
  triplet::KernelBasis adjoint_kernel_basis(Complex mu) const override;

  CVector gamma0(const GridFunction& u) const override;
  /// Endpoint derivatives from fourth-order one-sided differences.
  CVector gamma1(const GridFunction& u) const override;

  /// Variation of parameters on the first-order system for (u1, u1' - a u2).
  /// Throws DirichletSpectrum or CoefficientSingularity.
  GridFunction reference_resolvent(Complex lambda, const GridFunction& f) const override;
  GridFunction poisson(Complex lambda, std::span<const Complex> phi) const override;

  const Coefficients& coefficients() const noexcept { return coeffs_; }
  const OdeBackendOptions& options() const noexcept { return opts_; }
  const ExclusionTube& tube() const noexcept { return tube_; }
  bool in_tube(Complex lambda) const { return tube_.contains(lambda); }

 private:
  Coefficients coeffs_;
  Grid grid_;
  OdeBackendOptions opts_;
  ExclusionTube tube_;
  std::vector<double> x_;
};

}  // namespace mfunclab::odelab
