// SPDX-License-Identifier: Apache-2.0

#include "mfunclab/odelab/twins.hpp"

#include <cmath>

#include <fmt/format.h>

#include "mfunclab/error.hpp"

namespace mfunclab::odelab {

TwinPair twin_counterexample(const Coefficients& base, double x_lo, double x_hi,
                             Complex bump_height) {
  if (!(0.0 < x_lo && x_lo < x_hi && x_hi < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "need 0 < x_lo < x_hi < 1");
  }
  constexpr int kSamples = 64;
  for (int k = 0; k < kSamples; ++k) {
    const double x = x_lo + (x_hi - x_lo) * (k + 0.5) / kSamples;
    const double mag = std::abs(base.b.value(x));
    if (!(mag < 1e-14)) {
      throw Error(ErrorCode::HypothesisViolated,
                  fmt::format("|b({:.6g})| = {:.3e}; b must vanish on ({}, {})", x, mag, x_lo,
                              x_hi));
    }
  }
  TwinPair out{base, base};
  if (bump_height != Complex{}) {
    out.twin.c = base.c + SmoothFunction::bump(x_lo, x_hi, bump_height);
  }
  return out;
}

}  // namespace mfunclab::odelab
