// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <vector>

#include "mfunclab/numkit/cmatrix.hpp"
#include "mfunclab/odelab/coefficients.hpp"

namespace mfunclab::odelab {

/// Samples of a curve x -> f(x) in C on a uniform grid of [0, 1].
struct EssSpecCurve {
  std::vector<Complex> samples;
};

/// (a b + c)(x_k), k = 0..nsamples-1. Throws InvalidArgument below 512 samples.
EssSpecCurve ess_spectrum_curve(const Coefficients& coeffs, std::size_t nsamples = 1024);

/// ran(c) sampled the same way; lambda on it makes b / (lambda - c) blow up.
EssSpecCurve coefficient_range(const Coefficients& coeffs, std::size_t nsamples = 1024);

/// Distance from z to the polyline through the samples.
double distance_to_curve(const EssSpecCurve& curve, Complex z);

/// Symmetric Hausdorff distance between the two polylines, measured at the
/// sample points of each.
double hausdorff_distance(const EssSpecCurve& lhs, const EssSpecCurve& rhs);

/// Points within eps of ran(ab + c) or ran(c) for one or more coefficient
/// triples.
class ExclusionTube {
 public:
  ExclusionTube() = default;
  explicit ExclusionTube(const Coefficients& coeffs, double eps = 0.05,
                         std::size_t nsamples = 1024);

  void add(const Coefficients& coeffs, std::size_t nsamples = 1024);

  double eps() const noexcept { return eps_; }
  bool contains(Complex lambda) const;
  double distance(Complex lambda) const;

 private:
  double eps_ = 0.05;
  std::vector<EssSpecCurve> curves_;
};

}  // namespace mfunclab::odelab
