// SPDX-License-Identifier: Apache-2.0

#include "mfunclab/odelab/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <fmt/core.h>
#include <fmt/format.h>

#include "mfunclab/error.hpp"

namespace mfunclab::odelab {

namespace {

std::string fmt_c(Complex z) { return fmt::format("{:.10g}{:+.10g}i", z.real(), z.imag()); }

// b / (lambda - c) and its derivative; zero where b and b' vanish exactly.
void g_terms(const Jet& b, const Jet& c, Complex lambda, double x, double den_eps, Complex& g,
             Complex& dg) {
  if (b.value == Complex{} && b.deriv == Complex{}) {
    g = dg = Complex{};
    return;
  }
  const Complex d = lambda - c.value;
  if (std::abs(d) < den_eps) {
    throw Error(ErrorCode::CoefficientSingularity,
                fmt::format("lambda - c(x) vanishes at x = {:.6g}", x));
  }
  g = b.value / d;
  dg = b.deriv / d + b.value * c.deriv / (d * d);
}

}  // namespace

LocalTerms local_terms(const Coefficients& coeffs, Complex lambda, double x, double den_eps) {
  LocalTerms t;
  t.a = coeffs.a(x);
  t.b = coeffs.b(x);
  t.c = coeffs.c(x);
  g_terms(t.b, t.c, lambda, x, den_eps, t.g, t.dg);
  t.bracket = t.a.value * t.g - 1.0;
  if (std::abs(t.bracket) < den_eps) {
    throw Error(ErrorCode::CoefficientSingularity,
                fmt::format("a b / (lambda - c) - 1 vanishes at x = {:.6g}", x));
  }
  t.q = t.a.value * t.dg / t.bracket;
  return t;
}

QAlphaBeta q_alpha_beta(const Coefficients& coeffs, Complex lambda, double x,
                        const KernelOptions& opts) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "x must lie in [0, 1]");
  }
  const LocalTerms here = local_terms(coeffs, lambda, x, opts.den_eps);
  Complex log_alpha{};
  if (x > 0.0) {
    const OdeRhs rhs = [&](double s, std::span<const Complex>, std::span<Complex> dy) {
      dy[0] = local_terms(coeffs, lambda, s, opts.den_eps).q;
    };
    log_alpha = integrate_ivp(rhs, CVector{Complex{}}, 0.0, x, {}, opts.ivp).final_state()[0];
  }
  QAlphaBeta out;
  out.q = here.q;
  out.alpha = std::exp(log_alpha);
  out.beta = out.alpha / here.bracket;
  return out;
}

KernelPair kernel_pair(const Coefficients& coeffs, Complex lambda,
                       std::span<const double> abscissae, const KernelOptions& opts) {
  // State (log alpha, y1, p1, y2, p2) with p = alpha u1'.
  const OdeRhs rhs = [&](double x, std::span<const Complex> y, std::span<Complex> dy) {
    const LocalTerms t = local_terms(coeffs, lambda, x, opts.den_eps);
    const Complex alpha = std::exp(y[0]);
    const Complex lb = lambda * alpha / t.bracket;
    dy[0] = t.q;
    dy[1] = y[2] / alpha;
    dy[2] = lb * y[1];
    dy[3] = y[4] / alpha;
    dy[4] = lb * y[3];
  };
  CVector y0{Complex{}, 1.0, Complex{}, Complex{}, 1.0};
  // alpha(0) = 1, so p(0) = u1'(0).
  const Trajectory traj = integrate_ivp(rhs, y0, 0.0, 1.0, abscissae, opts.ivp);

  KernelPair kp;
  kp.lambda = lambda;
  kp.abscissae.assign(abscissae.begin(), abscissae.end());
  kp.y1.reserve(traj.size());
  kp.y2.reserve(traj.size());
  kp.alpha.reserve(traj.size());
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const auto s = traj.at(k);
    const Complex alpha = std::exp(s[0]);
    kp.alpha.push_back(alpha);
    kp.y1.push_back({s[1], s[2] / alpha});
    kp.y2.push_back({s[3], s[4] / alpha});
  }
  const CVector& fin = traj.final_state();
  kp.alpha_end = std::exp(fin[0]);
  kp.y1_end = {fin[1], fin[2] / kp.alpha_end};
  kp.y2_end = {fin[3], fin[4] / kp.alpha_end};

  const Jet starts[2] = {{1.0, 0.0}, {0.0, 1.0}};
  const Jet ends[2] = {kp.y1_end, kp.y2_end};
  kp.gamma0 = CMatrix(2, 2);
  kp.gamma1 = CMatrix(2, 2);
  for (std::size_t j = 0; j < 2; ++j) {
    const TracePair tr = gamma_traces(
        coeffs, {starts[j].value, starts[j].deriv, ends[j].value, ends[j].deriv, {}, {}}, lambda,
        opts.den_eps);
    for (std::size_t i = 0; i < 2; ++i) {
      kp.gamma0(i, j) = tr.gamma0[i];
      kp.gamma1(i, j) = tr.gamma1[i];
    }
  }
  return kp;
}

TracePair gamma_traces(const Coefficients& coeffs, const EndpointData& u, Complex lambda,
                       double den_eps) {
  auto u2_at = [&](double x, Complex du1, const std::optional<Complex>& given) {
    if (given) return *given;
    Complex g, dg;
    g_terms(coeffs.b(x), coeffs.c(x), lambda, x, den_eps, g, dg);
    return g * du1;
  };
  const Complex u2_0 = u2_at(0.0, u.du1_at0, u.u2_at0);
  const Complex u2_1 = u2_at(1.0, u.du1_at1, u.u2_at1);
  TracePair t;
  t.gamma0 = {u.u1_at1, u.u1_at0};
  t.gamma1 = {-u.du1_at1 + coeffs.a.value(1.0) * u2_1, u.du1_at0 - coeffs.a.value(0.0) * u2_0};
  return t;
}

CMatrix mfn_closed_form(const Coefficients& coeffs, Complex lambda, const KernelOptions& opts) {
  auto bracket = [&](double x) {
    Complex g, dg;
    g_terms(coeffs.b(x), coeffs.c(x), lambda, x, opts.den_eps, g, dg);
    return coeffs.a.value(x) * g;
  };
  const Complex br1 = bracket(1.0) - 1.0;
  const Complex br0 = 1.0 - bracket(0.0);
  if (std::abs(br1) < opts.den_eps || std::abs(br0) < opts.den_eps) {
    throw Error(ErrorCode::BracketSingular,
                fmt::format("endpoint bracket vanishes at lambda = {}", fmt_c(lambda)));
  }
  const KernelPair kp = kernel_pair(coeffs, lambda, {}, opts);
  const Complex y1 = kp.y1_end.value;
  const Complex dy1 = kp.y1_end.deriv;
  const Complex dy2 = kp.y2_end.deriv;
  const double scale = std::max({1.0, std::abs(y1), std::abs(dy2)});
  if (std::abs(dy1) <= 1e-9 * scale) {
    throw Error(ErrorCode::NeumannEigenvalue,
                fmt::format("y1'(1) = {} vanishes at lambda = {}", fmt_c(dy1), fmt_c(lambda)));
  }
  return CMatrix{{y1 / (br1 * dy1), 1.0 / (br0 * dy1)},
                 {1.0 / (br1 * dy1), dy2 / (br0 * dy1)}};
}

MfnComparison compare_mfn(const Coefficients& coeffs, Complex lambda, const CMatrix& oracle,
                          double tol, const KernelOptions& opts) {
  if (oracle.rows() != 2 || oracle.cols() != 2) {
    throw Error(ErrorCode::InvalidArgument, "oracle must be 2 x 2");
  }
  MfnComparison cmp;
  cmp.lambda = lambda;
  cmp.closed_form = mfn_closed_form(coeffs, lambda, opts);
  cmp.oracle = oracle;
  cmp.rel_diff = CMatrix(2, 2);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      const double ref = std::max(std::abs(oracle(i, j)), 1e-300);
      cmp.rel_diff(i, j) = std::abs(cmp.closed_form(i, j) - oracle(i, j)) / ref;
    }
  }
  cmp.ratio_m12 = oracle(0, 1) / cmp.closed_form(0, 1);
  cmp.ratio_m22 = oracle(1, 1) / cmp.closed_form(1, 1);
  const KernelPair kp = kernel_pair(coeffs, lambda, {}, opts);
  cmp.predicted_ratio_m12 = -1.0 / kp.alpha_end;
  cmp.m11_m21_agree = cmp.rel_diff(0, 0).real() < tol && cmp.rel_diff(1, 0).real() < tol;
  return cmp;
}

std::string MfnComparison::report() const {
  std::ostringstream os;
  os << "lambda = " << fmt_c(lambda) << "\n";
  const char* names[2][2] = {{"m11", "m12"}, {"m21", "m22"}};
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      os << fmt::format("  {}  closed_form {}  oracle {}  rel.diff {:.3e}\n", names[i][j],
                        fmt_c(closed_form(i, j)), fmt_c(oracle(i, j)), rel_diff(i, j).real());
    }
  }
  os << "  oracle / closed form m12 = " << fmt_c(ratio_m12)
     << "  (-1/alpha(1) = " << fmt_c(predicted_ratio_m12) << ")\n";
  os << "  oracle / closed form m22 = " << fmt_c(ratio_m22) << "\n";
  os << "  m11, m21 " << (m11_m21_agree ? "agree" : "DISAGREE") << "\n";
  return os.str();
}

}  // namespace mfunclab::odelab
