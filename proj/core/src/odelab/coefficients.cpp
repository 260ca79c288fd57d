// SPDX-License-Identifier: Apache-2.0

#include "mfunclab/odelab/coefficients.hpp"

#include <cmath>
#include <string>

#include "mfunclab/error.hpp"

namespace mfunclab::odelab {

SmoothFunction::SmoothFunction(Evaluator eval, std::string tag)
    : eval_(std::make_shared<const Evaluator>(std::move(eval))), tag_(std::move(tag)) {}

SmoothFunction SmoothFunction::constant(Complex value) {
  return SmoothFunction([value](double) { return Jet{value, Complex{}}; }, "constant");
}

SmoothFunction SmoothFunction::polynomial(std::vector<Complex> coeffs) {
  return SmoothFunction(
      [coeffs = std::move(coeffs)](double x) {
        Complex v{}, d{};
        for (std::size_t k = coeffs.size(); k-- > 0;) {
          d = d * x + v;
          v = v * x + coeffs[k];
        }
        return Jet{v, d};
      },
      "polynomial");
}

SmoothFunction SmoothFunction::trig(std::vector<TrigTerm> terms) {
  return SmoothFunction(
      [terms = std::move(terms)](double x) {
        Jet out{};
        for (const auto& t : terms) {
          const double arg = t.freq * x + t.phase;
          switch (t.kind) {
            case TrigTerm::Kind::Cos:
              out.value += t.amp * std::cos(arg);
              out.deriv -= t.amp * t.freq * std::sin(arg);
              break;
            case TrigTerm::Kind::Sin:
              out.value += t.amp * std::sin(arg);
              out.deriv += t.amp * t.freq * std::cos(arg);
              break;
            case TrigTerm::Kind::Exp: {
              const Complex e = std::polar(1.0, arg);
              out.value += t.amp * e;
              out.deriv += t.amp * Complex{0.0, t.freq} * e;
              break;
            }
          }
        }
        return out;
      },
      "trig");
}

SmoothFunction SmoothFunction::bump_zero(double lo, double hi, SmoothFunction outside,
                                         double width) {
  if (!(lo < hi) || !(width > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "bump_zero needs lo < hi and width > 0");
  }
  return SmoothFunction(
      [lo, hi, width, outside](double x) {
        double dist = 0.0, sign = 0.0;
        if (x < lo) {
          dist = lo - x;
          sign = -1.0;
        } else if (x > hi) {
          dist = x - hi;
          sign = 1.0;
        }
        if (dist <= 0.0) return Jet{};
        const double s = std::exp(-width / dist);
        const double ds = s * width / (dist * dist) * sign;
        const Jet o = outside(x);
        return Jet{o.value * s, o.deriv * s + o.value * ds};
      },
      "bump-composite");
}

SmoothFunction SmoothFunction::bump(double lo, double hi, Complex height) {
  if (!(lo < hi)) throw Error(ErrorCode::InvalidArgument, "bump needs lo < hi");
  return SmoothFunction(
      [lo, hi, height](double x) {
        const double t = (2.0 * x - lo - hi) / (hi - lo);
        if (std::abs(t) >= 1.0) return Jet{};
        const double q = 1.0 - t * t;
        const double eta = std::exp(-1.0 / q);
        const double deta = eta * (-2.0 * t / (q * q)) * (2.0 / (hi - lo));
        return Jet{height * eta, height * deta};
      },
      "bump-composite");
}

SmoothFunction operator+(const SmoothFunction& f, const SmoothFunction& g) {
  return SmoothFunction(
      [f, g](double x) {
        const Jet a = f(x), b = g(x);
        return Jet{a.value + b.value, a.deriv + b.deriv};
      },
      f.tag() == g.tag() ? f.tag() : "sum");
}

SmoothFunction operator*(const SmoothFunction& f, const SmoothFunction& g) {
  return SmoothFunction(
      [f, g](double x) {
        const Jet a = f(x), b = g(x);
        return Jet{a.value * b.value, a.deriv * b.value + a.value * b.deriv};
      },
      f.tag() == g.tag() ? f.tag() : "product");
}

Coefficients Coefficients::decoupled() {
  const auto zero = SmoothFunction::constant(0.0);
  return Coefficients{zero, zero, zero};
}

void validate(const Coefficients& coeffs, std::size_t samples) {
  constexpr double step = 1e-6;
  const SmoothFunction* fns[] = {&coeffs.a, &coeffs.b, &coeffs.c};
  const char* names[] = {"a", "b", "c"};
  for (std::size_t f = 0; f < 3; ++f) {
    for (std::size_t k = 0; k < samples; ++k) {
      const double x = samples == 1 ? 0.5
                                    : static_cast<double>(k) / static_cast<double>(samples - 1);
      const Jet j = (*fns[f])(x);
      if (!std::isfinite(std::abs(j.value)) || !std::isfinite(std::abs(j.deriv))) {
        throw Error(ErrorCode::InvalidArgument,
                    std::string("coefficient ") + names[f] + " is not finite at x = " +
                        std::to_string(x));
      }
      const double lo = std::max(0.0, x - step), hi = std::min(1.0, x + step);
      const Complex fd = ((*fns[f])(hi).value - (*fns[f])(lo).value) / (hi - lo);
      if (std::abs(fd - j.deriv) > 1e-4 * std::max(1.0, std::abs(j.deriv))) {
        throw Error(ErrorCode::InvalidArgument,
                    std::string("derivative of coefficient ") + names[f] +
                        " inconsistent with its values at x = " + std::to_string(x));
      }
    }
  }
}

}  // namespace mfunclab::odelab
