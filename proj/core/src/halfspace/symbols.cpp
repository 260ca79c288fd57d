// SPDX-License-Identifier: Apache-2.0

#include "mfunclab/halfspace/symbols.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "mfunclab/error.hpp"

namespace mfunclab::halfspace {

namespace {
constexpr Complex kI{0.0, 1.0};
}

HalfspaceParams HalfspaceParams::scalar(double rho, Complex mu, Complex c) {
  HalfspaceParams p{rho, mu, c};
  check_params(p);
  return p;
}

HalfspaceParams HalfspaceParams::from_bvec(double rho, Complex mu, std::span<const double> bvec,
                                           std::span<const double> direction) {
  double dot = 0.0;
  if (direction.empty()) {
    dot = bvec.empty() ? 0.0 : bvec[0];
  } else {
    if (direction.size() != bvec.size()) {
      throw Error(ErrorCode::InvalidArgument, "bvec and direction differ in length");
    }
    double norm = 0.0;
    for (double d : direction) norm += d * d;
    norm = std::sqrt(norm);
    if (!(norm > 0.0)) throw Error(ErrorCode::InvalidArgument, "direction must be nonzero");
    for (std::size_t k = 0; k < bvec.size(); ++k) dot += bvec[k] * direction[k] / norm;
  }
  return scalar(rho, mu, kI * (rho * dot));
}

Complex HalfspaceParams::lambda() const {
  const Complex m2 = mu * mu;
  return -(m2 * m2);
}

void check_params(const HalfspaceParams& p) {
  if (!std::isfinite(p.rho) || p.rho < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "rho must be finite and non-negative");
  }
  if (!std::isfinite(p.mu.real()) || !std::isfinite(p.mu.imag()) || p.mu == Complex{} ||
      std::abs(std::arg(p.mu)) >= std::numbers::pi / 4.0 - 1e-12) {
    throw Error(ErrorCode::SectorViolation,
                fmt::format("mu = {}{:+}i is outside the sector |arg mu| < pi/4", p.mu.real(),
                            p.mu.imag()));
  }
}

SigmaPair sigma_pm(const HalfspaceParams& p) {
  check_params(p);
  const double r2 = p.rho * p.rho;
  const Complex im2 = kI * p.mu * p.mu;
  return {std::sqrt(r2 + im2), std::sqrt(r2 - im2)};
}

std::pair<Complex, Complex> poisson_symbol_coeffs(const HalfspaceParams& p, Complex phi0,
                                                  Complex phi1) {
  const SigmaPair s = sigma_pm(p);
  const Complex diff = s.plus - s.minus;
  if (std::abs(diff) < 1e-14) {
    throw Error(ErrorCode::DegenerateRoots, "sigma_+ and sigma_- coincide");
  }
  return {(-s.minus * phi0 - phi1) / diff, (s.plus * phi0 + phi1) / diff};
}

Complex poisson_derivative(const HalfspaceParams& p, Complex phi0, Complex phi1, int k) {
  const SigmaPair s = sigma_pm(p);
  const auto [c1, c2] = poisson_symbol_coeffs(p, phi0, phi1);
  return c1 * std::pow(-s.plus, k) + c2 * std::pow(-s.minus, k);
}

CMatrix dtn_symbol(const HalfspaceParams& p) {
  const SigmaPair s = sigma_pm(p);
  const Complex sum = s.plus + s.minus;
  const Complex q = 0.25 * sum;
  return CMatrix{{q * 2.0 * s.plus * s.minus, q * sum}, {-q * sum, -2.0 * q}};
}

std::pair<Complex, Complex> neumann_traces(const HalfspaceParams& p, Complex phi0,
                                           Complex phi1) {
  const double r2 = p.rho * p.rho;
  const Complex v0 = poisson_derivative(p, phi0, phi1, 0);
  const Complex v1 = poisson_derivative(p, phi0, phi1, 1);
  const Complex v2 = poisson_derivative(p, phi0, phi1, 2);
  const Complex v3 = poisson_derivative(p, phi0, phi1, 3);
  return {r2 * v1 - v3, -r2 * v0 + v2};
}

Complex l_symbol(const HalfspaceParams& p) {
  const SigmaPair s = sigma_pm(p);
  return p.c + 0.5 * (s.plus + s.minus);
}

Complex m_symbol(const HalfspaceParams& p) {
  const Complex l = l_symbol(p);
  if (std::abs(l) < 1e-14) {
    throw Error(ErrorCode::SymbolPole, "c(xi') + (sigma_+ + sigma_-) / 2 vanishes");
  }
  return -1.0 / l;
}

}  // namespace mfunclab::halfspace
