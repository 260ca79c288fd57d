// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mfunclab/numkit/cmatrix.hpp"
#include "mfunclab/numkit/ivp.hpp"
#include "mfunclab/odelab/coefficients.hpp"

namespace mfunclab::odelab {

struct KernelOptions {
  IvpOptions ivp{};
  /// Smallest admissible |lambda - c| and |a b / (lambda - c) - 1|.
  double den_eps = 1e-10;
};

/// Pointwise quantities entering the reduction of (A - lambda) u = 0 to a
/// scalar equation for u1, with g = b / (lambda - c):
///   u2 = g u1',  (a g - 1) u1'' + a g' u1' - lambda u1 = 0.
struct LocalTerms {
  Jet a, b, c;
  Complex g;
  Complex dg;
  /// a g - 1; its zeros are the points where lambda = a b + c.
  Complex bracket;
  /// a g' / (a g - 1).
  Complex q;
};

/// Throws CoefficientSingularity when lambda - c or the bracket falls below
/// den_eps in modulus. Where b and b' vanish exactly, g = g' = 0 regardless of c.
LocalTerms local_terms(const Coefficients& coeffs, Complex lambda, double x, double den_eps);

struct QAlphaBeta {
  Complex q;
  /// exp(\int_0^x Q).
  Complex alpha;
  /// alpha / (a b / (lambda - c) - 1).
  Complex beta;
};

/// Q, alpha and beta at x; alpha by adaptive quadrature of Q over [0, x].
QAlphaBeta q_alpha_beta(const Coefficients& coeffs, Complex lambda, double x,
                        const KernelOptions& opts = {});

/// Two solutions y1, y2 of (alpha u1')' = lambda beta u1 with
/// y1(0) = 1, y1'(0) = 0, y2(0) = 0, y2'(0) = 1. The kernel of A_max - lambda
/// consists of (u1, b u1' / (lambda - c)) with u1 = c1 y1 + c2 y2.
struct KernelPair {
  Complex lambda;
  std::vector<double> abscissae;
  /// (u1, u1') of each solution at the abscissae.
  std::vector<Jet> y1, y2;
  std::vector<Complex> alpha;
  /// Values at x = 1.
  Jet y1_end, y2_end;
  Complex alpha_end;
  /// Column j: Gamma_0 (resp. Gamma_1) of the j-th kernel element.
  CMatrix gamma0, gamma1;
};

KernelPair kernel_pair(const Coefficients& coeffs, Complex lambda,
                       std::span<const double> abscissae = {}, const KernelOptions& opts = {});

/// Endpoint data of a pair (u1, u2); u2 is recovered as b u1' / (lambda - c)
/// when absent.
struct EndpointData {
  Complex u1_at0, du1_at0, u1_at1, du1_at1;
  std::optional<Complex> u2_at0, u2_at1;
};

struct TracePair {
  std::array<Complex, 2> gamma0;
  std::array<Complex, 2> gamma1;
};

/// Gamma_0 u = (u1(1), u1(0)),
/// Gamma_1 u = (-u1'(1) + a(1) u2(1), u1'(0) - a(0) u2(0)).
TracePair gamma_traces(const Coefficients& coeffs, const EndpointData& u, Complex lambda,
                       double den_eps = 1e-10);

/// The four entries of the Neumann M-function written in terms of y1(1),
/// y1'(1), y2'(1) and the brackets at the endpoints, as published. Throws
/// NeumannEigenvalue when y1'(1) vanishes and BracketSingular when a bracket
/// does.
CMatrix mfn_closed_form(const Coefficients& coeffs, Complex lambda,
                        const KernelOptions& opts = {});

/// Entry-by-entry comparison of mfn_closed_form against an
/// independently computed Gamma_0 Gamma_1^{-1}.
struct MfnComparison {
  Complex lambda;
  CMatrix closed_form;
  CMatrix oracle;
  /// |closed_form - oracle| / |oracle| for each entry.
  CMatrix rel_diff;
  /// oracle / closed_form for m12 and m22.
  Complex ratio_m12, ratio_m22;
  /// -1 / alpha(1) = -(y1 y2' - y2 y1')(1), the predicted ratio_m12.
  Complex predicted_ratio_m12;
  bool m11_m21_agree = false;

  std::string report() const;
};

MfnComparison compare_mfn(const Coefficients& coeffs, Complex lambda, const CMatrix& oracle,
                          double tol = 1e-8, const KernelOptions& opts = {});

}  // namespace mfunclab::odelab
