// SPDX-License-Identifier: Apache-2.0

#include "mfunclab/odelab/essential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mfunclab/error.hpp"

namespace mfunclab::odelab {

namespace {

template <class F>
EssSpecCurve sample_curve(std::size_t n, F&& f) {
  if (n < 512) {
    throw Error(ErrorCode::InvalidArgument, "at least 512 curve samples are required");
  }
  EssSpecCurve curve;
  curve.samples.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    curve.samples.push_back(f(static_cast<double>(k) / static_cast<double>(n - 1)));
  }
  return curve;
}

double segment_distance(Complex p, Complex a, Complex b) {
  const Complex d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(p - a);
  const double t = std::clamp(((p - a) * std::conj(d)).real() / len2, 0.0, 1.0);
  return std::abs(p - (a + t * d));
}

double directed(const EssSpecCurve& from, const EssSpecCurve& to) {
  double worst = 0.0;
  for (Complex z : from.samples) worst = std::max(worst, distance_to_curve(to, z));
  return worst;
}

}  // namespace

EssSpecCurve ess_spectrum_curve(const Coefficients& coeffs, std::size_t nsamples) {
  return sample_curve(nsamples, [&](double x) {
    return coeffs.a.value(x) * coeffs.b.value(x) + coeffs.c.value(x);
  });
}

EssSpecCurve coefficient_range(const Coefficients& coeffs, std::size_t nsamples) {
  return sample_curve(nsamples, [&](double x) { return coeffs.c.value(x); });
}

double distance_to_curve(const EssSpecCurve& curve, Complex z) {
  const auto& s = curve.samples;
  if (s.empty()) return std::numeric_limits<double>::infinity();
  if (s.size() == 1) return std::abs(z - s[0]);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < s.size(); ++k) {
    best = std::min(best, segment_distance(z, s[k], s[k + 1]));
  }
  return best;
}

double hausdorff_distance(const EssSpecCurve& lhs, const EssSpecCurve& rhs) {
  return std::max(directed(lhs, rhs), directed(rhs, lhs));
}

ExclusionTube::ExclusionTube(const Coefficients& coeffs, double eps, std::size_t nsamples)
    : eps_(eps) {
  add(coeffs, nsamples);
}

void ExclusionTube::add(const Coefficients& coeffs, std::size_t nsamples) {
  curves_.push_back(ess_spectrum_curve(coeffs, nsamples));
  curves_.push_back(coefficient_range(coeffs, nsamples));
}

double ExclusionTube::distance(Complex lambda) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : curves_) best = std::min(best, distance_to_curve(c, lambda));
  return best;
}

bool ExclusionTube::contains(Complex lambda) const { return distance(lambda) <= eps_; }

}  // namespace mfunclab::odelab
