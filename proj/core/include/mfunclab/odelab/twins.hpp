// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <utility>

#include "mfunclab/odelab/coefficients.hpp"

namespace mfunclab::odelab {

struct TwinPair {
  Coefficients base;
  Coefficients twin;
};

/// twin.c = base.c + bump_height * eta with eta the exp(-1 / (1 - t^2)) bump
/// on (x_lo, x_hi); a and b are shared. Requires b to vanish on the interval
/// (64 samples, |b| < 1e-14), otherwise throws HypothesisViolated. Throws
/// InvalidArgument unless 0 < x_lo < x_hi < 1.
TwinPair twin_counterexample(const Coefficients& base, double x_lo, double x_hi,
                             Complex bump_height);

}  // namespace mfunclab::odelab
