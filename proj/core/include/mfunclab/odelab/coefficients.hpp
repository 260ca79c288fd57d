// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "mfunclab/numkit/cmatrix.hpp"

namespace mfunclab::odelab {

/// Value and first derivative at a point.
struct Jet {
  Complex value;
  Complex deriv;
};

/// amp * f(freq * x + phase) with f one of cos, sin, or exp(i .).
struct TrigTerm {
  enum class Kind { Cos, Sin, Exp };
  Kind kind = Kind::Cos;
  Complex amp{1.0, 0.0};
  double freq = 0.0;
  double phase = 0.0;
};

/// Immutable smooth complex function on [0, 1] evaluated together with its
/// derivative. Cheap to copy; copies share the evaluator.
class SmoothFunction {
 public:
  using Evaluator = std::function<Jet(double)>;

  SmoothFunction(Evaluator eval, std::string tag);

  static SmoothFunction constant(Complex value);
  /// sum_k coeffs[k] x^k.
  static SmoothFunction polynomial(std::vector<Complex> coeffs);
  static SmoothFunction trig(std::vector<TrigTerm> terms);
  /// outside(x) * s(x) where s vanishes identically on [lo, hi] and equals
  /// exp(-width / dist(x, [lo, hi])) elsewhere; C-infinity and flat at the
  /// interval ends.
  static SmoothFunction bump_zero(double lo, double hi, SmoothFunction outside,
                                  double width = 0.05);
  /// height * eta(x), eta = exp(-1 / (1 - t^2)) with t the affine map of
  /// (lo, hi) onto (-1, 1), extended by zero. Peak value height / e at the
  /// midpoint.
  static SmoothFunction bump(double lo, double hi, Complex height);

  Jet operator()(double x) const { return (*eval_)(x); }
  Complex value(double x) const { return (*eval_)(x).value; }

  /// polynomial, trig, bump-composite, constant or sum.
  const std::string& tag() const noexcept { return tag_; }

  friend SmoothFunction operator+(const SmoothFunction& f, const SmoothFunction& g);
  friend SmoothFunction operator*(const SmoothFunction& f, const SmoothFunction& g);

 private:
  std::shared_ptr<const Evaluator> eval_;
  std::string tag_;
};

/// Coefficient triple (a, b, c) of the operator
///   A (u1, u2) = (-u1'' + a u2', b u1' + c u2)   on [0, 1].
struct Coefficients {
  SmoothFunction a;
  SmoothFunction b;
  SmoothFunction c;

  /// a = b = c = 0: -d^2/dx^2 decoupled from a multiplication by 0.
  static Coefficients decoupled();
};

/// Throws InvalidArgument when some coefficient is not finite or its
/// derivative disagrees with a central difference (step 1e-6) by more than
/// 1e-4 (relative to max(1, |value|)) at `samples` points of [0, 1].
void validate(const Coefficients& coeffs, std::size_t samples = 65);

}  // namespace mfunclab::odelab
