// SPDX-License-Identifier: Apache-2.0

#include "mfunclab/odelab/backend.hpp"

#include <cmath>

#include <fmt/format.h>

#include "mfunclab/error.hpp"
#include "mfunclab/numkit/ivp.hpp"
#include "mfunclab/numkit/linalg.hpp"

namespace mfunclab::odelab {

namespace {

Complex d_left(std::span<const Complex> f, double h) {
  return (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / (12.0 * h);
}

Complex d_right(std::span<const Complex> f, double h) {
  const std::size_t n = f.size();
  return (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] - 16.0 * f[n - 4] +
          3.0 * f[n - 5]) /
         (12.0 * h);
}

// Second-order derivative estimate at every grid point.
CVector derivative(const CVector& f, double h) {
  const std::size_t n = f.size();
  CVector d(n);
  d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
  d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
  for (std::size_t k = 1; k + 1 < n; ++k) d[k] = (f[k + 1] - f[k - 1]) / (2.0 * h);
  return d;
}

// \int_0^{x_k} G by the trapezoid rule with the first end correction.
CVector cumulative_integral(const CVector& g, double h) {
  const CVector dg = derivative(g, h);
  CVector out(g.size());
  Complex trap{};
  for (std::size_t k = 1; k < g.size(); ++k) {
    trap += 0.5 * h * (g[k - 1] + g[k]);
    out[k] = trap - h * h / 12.0 * (dg[k] - dg[0]);
  }
  return out;
}

}  // namespace

OdeBackend::OdeBackend(Coefficients coeffs, Grid grid, OdeBackendOptions opts)
    : coeffs_(std::move(coeffs)),
      grid_(grid),
      opts_(opts),
      tube_(coeffs_, opts.tube_eps),
      x_(grid_.points()) {
  if (grid_.size() < 5) {
    throw Error(ErrorCode::InvalidArgument, "the ODE backend needs at least 5 grid points");
  }
}

triplet::BoundaryTraces OdeBackend::kernel_traces(Complex lambda) const {
  KernelPair kp = kernel_pair(coeffs_, lambda, {}, opts_.kernel);
  return {std::move(kp.gamma0), std::move(kp.gamma1)};
}

triplet::KernelBasis OdeBackend::kernel_basis(Complex lambda) const {
  KernelPair kp = kernel_pair(coeffs_, lambda, x_, opts_.kernel);
  std::vector<C2> v1(x_.size()), v2(x_.size());
  for (std::size_t k = 0; k < x_.size(); ++k) {
    const LocalTerms t = local_terms(coeffs_, lambda, x_[k], opts_.kernel.den_eps);
    v1[k] = {kp.y1[k].value, t.g * kp.y1[k].deriv};
    v2[k] = {kp.y2[k].value, t.g * kp.y2[k].deriv};
  }
  triplet::KernelBasis basis;
  basis.elements.emplace_back(grid_, std::move(v1));
  basis.elements.emplace_back(grid_, std::move(v2));
  basis.traces = {std::move(kp.gamma0), std::move(kp.gamma1)};
  return basis;
}

triplet::KernelBasis OdeBackend::adjoint_kernel_basis(Complex mu) const {
  const double den_eps = opts_.kernel.den_eps;
  auto v2_of = [&](double x, Complex v1, Complex q, const Jet& a, const Jet& b,
                   const Jet& c) -> Complex {
    if (a.value == Complex{} && a.deriv == Complex{}) return {};
    const Complex d = std::conj(a.value * b.value + c.value) - mu;
    if (std::abs(d) < den_eps) {
      throw Error(ErrorCode::CoefficientSingularity,
                  fmt::format("adjoint elimination singular at x = {:.6g}", x));
    }
    return (std::conj(a.deriv) * v1 + std::conj(a.value) * q) / d;
  };
  // State (v1, q) for two solutions.
  const OdeRhs rhs = [&](double x, std::span<const Complex> y, std::span<Complex> dy) {
    const Jet a = coeffs_.a(x), b = coeffs_.b(x), c = coeffs_.c(x);
    for (std::size_t s = 0; s < 2; ++s) {
      const Complex v1 = y[2 * s], q = y[2 * s + 1];
      const Complex v2 = v2_of(x, v1, q, a, b, c);
      dy[2 * s] = q - std::conj(b.value) * v2;
      dy[2 * s + 1] = -mu * v1;
    }
  };
  const Trajectory traj =
      integrate_ivp(rhs, CVector{1.0, 0.0, 0.0, 1.0}, 0.0, 1.0, x_, opts_.kernel.ivp);

  std::vector<C2> e1(x_.size()), e2(x_.size());
  for (std::size_t k = 0; k < x_.size(); ++k) {
    const auto s = traj.at(k);
    const Jet a = coeffs_.a(x_[k]), b = coeffs_.b(x_[k]), c = coeffs_.c(x_[k]);
    e1[k] = {s[0], v2_of(x_[k], s[0], s[1], a, b, c)};
    e2[k] = {s[2], v2_of(x_[k], s[2], s[3], a, b, c)};
  }
  const CVector& fin = traj.final_state();
  triplet::KernelBasis basis;
  basis.elements.emplace_back(grid_, std::move(e1));
  basis.elements.emplace_back(grid_, std::move(e2));
  basis.traces.gamma0 = CMatrix{{fin[0], fin[2]}, {1.0, 0.0}};
  basis.traces.gamma1 = CMatrix{{-fin[1], -fin[3]}, {0.0, 1.0}};
  return basis;
}

CVector OdeBackend::gamma0(const GridFunction& u) const {
  if (!(u.grid() == grid_)) throw Error(ErrorCode::GridMismatch, "gamma0");
  return {u[u.size() - 1][0], u[0][0]};
}

CVector OdeBackend::gamma1(const GridFunction& u) const {
  if (!(u.grid() == grid_)) throw Error(ErrorCode::GridMismatch, "gamma1");
  const CVector u1 = u.component(0);
  const double h = grid_.spacing();
  const Complex du0 = d_left(u1, h);
  const Complex du1 = d_right(u1, h);
  return {-du1 + coeffs_.a.value(1.0) * u[u.size() - 1][1], du0 - coeffs_.a.value(0.0) * u[0][1]};
}

GridFunction OdeBackend::reference_resolvent(Complex lambda, const GridFunction& f) const {
  if (!(f.grid() == grid_)) throw Error(ErrorCode::GridMismatch, "reference_resolvent");
  const double den_eps = opts_.kernel.den_eps;
  const KernelPair kp = kernel_pair(coeffs_, lambda, x_, opts_.kernel);
  const std::size_t n = x_.size();
  const double h = grid_.spacing();

  CVector g1(n), g2(n), kk(n), dd(n), bb(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = x_[i];
    const LocalTerms t = local_terms(coeffs_, lambda, x, den_eps);
    const Complex d = t.a.value * t.b.value + t.c.value - lambda;
    if (std::abs(d) < den_eps) {
      throw Error(ErrorCode::CoefficientSingularity,
                  fmt::format("a b + c - lambda vanishes at x = {:.6g}", x));
    }
    const Complex k = -t.bracket;
    const Complex F1 = t.a.value * f[i][1] / d;
    const Complex F2 = -t.a.deriv * f[i][1] / d - f[i][0];
    const Jet& y1 = kp.y1[i];
    const Jet& y2 = kp.y2[i];
    const Complex det = k * (y1.value * y2.deriv - y2.value * y1.deriv);
    g1[i] = (k * y2.deriv * F1 - y2.value * F2) / det;
    g2[i] = (-k * y1.deriv * F1 + y1.value * F2) / det;
    kk[i] = k;
    dd[i] = d;
    bb[i] = t.b.value;
  }
  const CVector i1 = cumulative_integral(g1, h);
  const CVector i2 = cumulative_integral(g2, h);

  const Complex y1e = kp.y1_end.value, y2e = kp.y2_end.value;
  if (std::abs(y2e) <= 1e-10 * std::max(1.0, std::abs(y1e))) {
    throw Error(ErrorCode::DirichletSpectrum,
                fmt::format("y2(1) vanishes at lambda = {}{:+}i", lambda.real(), lambda.imag()));
  }
  const Complex kappa2 = -i2[n - 1] - y1e * i1[n - 1] / y2e;

  std::vector<C2> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Complex c1 = i1[i];
    const Complex c2 = kappa2 + i2[i];
    const Complex u1 = kp.y1[i].value * c1 + kp.y2[i].value * c2;
    const Complex p = kk[i] * (kp.y1[i].deriv * c1 + kp.y2[i].deriv * c2);
    out[i] = {u1, (f[i][1] - bb[i] * p) / dd[i]};
  }
  // Gamma_0 w = 0 holds exactly.
  out[0][0] = 0.0;
  out[n - 1][0] = 0.0;
  return GridFunction(grid_, std::move(out));
}

GridFunction OdeBackend::poisson(Complex lambda, std::span<const Complex> phi) const {
  if (phi.size() != 2) throw Error(ErrorCode::InvalidArgument, "boundary data must have 2 entries");
  triplet::KernelBasis basis = kernel_basis(lambda);
  CVector coef;
  try {
    coef = solve_linear(basis.traces.gamma0, phi);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SingularMatrix) throw;
    throw Error(ErrorCode::DirichletSpectrum, "Gamma_0 is not injective on the kernel");
  }
  GridFunction z = coef[0] * basis.elements[0];
  z += coef[1] * basis.elements[1];
  return z;
}

}  // namespace mfunclab::odelab
