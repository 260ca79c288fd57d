// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "mfunclab/numkit/cmatrix.hpp"

namespace mfunclab {

/// dy/dt = rhs(t, y); the callee writes into dydt.
using OdeRhs = std::function<void(double t, std::span<const Complex> y, std::span<Complex> dydt)>;

struct IvpOptions {
  /// Mixed absolute/relative per-step error target.
  double tol = 1e-10;
  /// Smallest step the controller may take before giving up.
  double h_min = 1e-12;
  std::size_t max_steps = 200000;
};

/// States of an initial-value solve at the requested abscissae.
class Trajectory {
 public:
  Trajectory(std::size_t dimension, std::vector<double> abscissae);

  std::size_t dimension() const noexcept { return dim_; }
  std::size_t size() const noexcept { return t_.size(); }
  const std::vector<double>& abscissae() const noexcept { return t_; }

  std::span<const Complex> at(std::size_t k) const {
    return {values_.data() + k * dim_, dim_};
  }
  std::span<Complex> at(std::size_t k) { return {values_.data() + k * dim_, dim_}; }

  /// State at the end of the span.
  const CVector& final_state() const noexcept { return final_; }

  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;

 private:
  friend Trajectory integrate_ivp(const OdeRhs&, CVector, double, double,
                                  std::span<const double>, const IvpOptions&);
  std::size_t dim_;
  std::vector<double> t_;
  std::vector<Complex> values_;
  CVector final_;
};

/// Integrates y' = rhs(t, y) from t0 to t1 > t0 with the Dormand-Prince 5(4)
/// pair under a PI step-size controller. States at `samples` (ascending, inside
/// [t0, t1]) come from the pair's continuous extension.
///
/// Throws StepUnderflow when the step falls below h_min or the step budget is
/// exhausted; in this library that means the coefficients blow up near some x,
/// typically because lambda approaches the essential spectrum.
Trajectory integrate_ivp(const OdeRhs& rhs, CVector y0, double t0, double t1,
                         std::span<const double> samples, const IvpOptions& opts = {});

}  // namespace mfunclab
