// SPDX-License-Identifier: Apache-2.0

#include "mfunclab/odelab/resolvent.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "mfunclab/error.hpp"
#include "mfunclab/numkit/linalg.hpp"
#include "mfunclab/odelab/kernel.hpp"

namespace mfunclab::odelab {

namespace {

struct Pointwise {
  Complex a, g, dg, r;  // r = f2 / (lambda - c)
};

CVector central_derivative(const CVector& v, double h) {
  const std::size_t m = v.size();
  CVector d(m);
  d[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
  d[m - 1] = (3.0 * v[m - 1] - 4.0 * v[m - 2] + v[m - 3]) / (2.0 * h);
  for (std::size_t i = 1; i + 1 < m; ++i) d[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
  return d;
}

// One solve on the points x[0..m-1] with spacing h; f1/f2 given there.
std::vector<C2> solve_on(const Coefficients& coeffs, const triplet::BoundaryRealization& real,
                         Complex lambda, const std::vector<double>& x, const CVector& f1,
                         const CVector& f2, const DirectResolventOptions& opts) {
  const std::size_t m = x.size();
  const double h = x[1] - x[0];
  std::vector<Pointwise> pw(m);
  CVector r(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Complex d = lambda - coeffs.c.value(x[i]);
    if (std::abs(d) < opts.den_eps) {
      throw Error(ErrorCode::CoefficientSingularity,
                  fmt::format("lambda - c(x) vanishes at x = {:.6g}", x[i]));
    }
    const LocalTerms t = local_terms(coeffs, lambda, x[i], opts.den_eps);
    pw[i] = {t.a.value, t.g, t.dg, f2[i] / d};
    r[i] = pw[i].r;
  }
  const CVector dr = central_derivative(r, h);

  CVector sub(m), diag(m), sup(m), rhs_p(m), rhs_0(m), rhs_1(m);
  diag[0] = diag[m - 1] = 1.0;
  for (std::size_t i = 1; i + 1 < m; ++i) {
    const Complex A = pw[i].a * pw[i].g - 1.0;
    const Complex B = pw[i].a * pw[i].dg;
    sub[i] = A / (h * h) - B / (2.0 * h);
    diag[i] = -2.0 * A / (h * h) - lambda;
    sup[i] = A / (h * h) + B / (2.0 * h);
    rhs_p[i] = f1[i] + pw[i].a * dr[i];
  }
  rhs_0[0] = 1.0;
  rhs_1[m - 1] = 1.0;
  const TridiagonalLu lu(sub, diag, sup);
  const CVector up = lu.solve(rhs_p);
  const CVector u0 = lu.solve(rhs_0);
  const CVector u1 = lu.solve(rhs_1);

  auto traces = [&](const CVector& u, bool inhomogeneous) {
    const Complex du0 = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * h);
    const Complex du1 = (3.0 * u[m - 1] - 4.0 * u[m - 2] + u[m - 3]) / (2.0 * h);
    const Complex v0 = pw[0].g * du0 - (inhomogeneous ? pw[0].r : Complex{});
    const Complex v1 = pw[m - 1].g * du1 - (inhomogeneous ? pw[m - 1].r : Complex{});
    return CVector{u[m - 1], u[0], -du1 + pw[m - 1].a * v1, du0 - pw[0].a * v0};
  };
  const CMatrix R = real.condition_rows();
  const CVector tp = R * traces(up, true);
  const CVector t0 = R * traces(u0, false);
  const CVector t1 = R * traces(u1, false);
  const CMatrix sys{{t0[0], t1[0]}, {t0[1], t1[1]}};
  const LuFactorization fac(sys);
  if (fac.singular() || fac.condition_inf() > opts.cond_cap) {
    throw Error(ErrorCode::SpectralPoint,
                fmt::format("boundary system singular at lambda = {}{:+}i", lambda.real(),
                            lambda.imag()));
  }
  const CVector s = fac.solve(CVector{-tp[0], -tp[1]});

  CVector w1(m);
  for (std::size_t i = 0; i < m; ++i) w1[i] = up[i] + s[0] * u0[i] + s[1] * u1[i];
  const CVector dw1 = central_derivative(w1, h);
  std::vector<C2> out(m);
  for (std::size_t i = 0; i < m; ++i) out[i] = {w1[i], pw[i].g * dw1[i] - pw[i].r};
  return out;
}

}  // namespace

DirectSolution direct_resolvent_solve(const Coefficients& coeffs,
                                      const triplet::BoundaryRealization& realization,
                                      Complex lambda, const GridFunction& f,
                                      const DirectResolventOptions& opts) {
  if (realization.dimension() != 2) {
    throw Error(ErrorCode::InvalidRealization, "the ODE problem has defect dimension 2");
  }
  const Grid& grid = f.grid();
  const std::vector<double> x = grid.points();
  const std::size_t n = x.size();
  const CVector f1 = f.component(0), f2 = f.component(1);
  std::vector<C2> fine = solve_on(coeffs, realization, lambda, x, f1, f2, opts);

  double estimate = std::numeric_limits<double>::quiet_NaN();
  const std::size_t m = (n + 1) / 2;
  if (m >= 5) {
    std::vector<double> xc(m);
    CVector f1c(m), f2c(m);
    for (std::size_t j = 0; j < m; ++j) {
      xc[j] = x[2 * j];
      f1c[j] = f1[2 * j];
      f2c[j] = f2[2 * j];
    }
    const std::vector<C2> coarse = solve_on(coeffs, realization, lambda, xc, f1c, f2c, opts);
    std::vector<C2> e(m);
    estimate = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t c = 0; c < 2; ++c) {
        e[j][c] = (fine[2 * j][c] - coarse[j][c]) / 3.0;
        estimate = std::max(estimate, std::abs(e[j][c]));
      }
    }
    if (opts.extrapolate) {
      for (std::size_t c = 0; c < 2; ++c) {
        for (std::size_t j = 0; j < m; ++j) fine[2 * j][c] += e[j][c];
        for (std::size_t j = 0; j + 1 < m; ++j) {
          Complex mid;
          if (j == 0) {
            mid = (3.0 * e[0][c] + 6.0 * e[1][c] - e[2][c]) / 8.0;
          } else if (j == m - 2) {
            mid = (3.0 * e[m - 1][c] + 6.0 * e[m - 2][c] - e[m - 3][c]) / 8.0;
          } else {
            mid = (-e[j - 1][c] + 9.0 * e[j][c] + 9.0 * e[j + 1][c] - e[j + 2][c]) / 16.0;
          }
          fine[2 * j + 1][c] += mid;
        }
      }
    }
  }
  return {GridFunction(grid, std::move(fine)), estimate};
}

GridFunction direct_resolvent(const Coefficients& coeffs,
                              const triplet::BoundaryRealization& realization, Complex lambda,
                              const GridFunction& f, const DirectResolventOptions& opts) {
  return direct_resolvent_solve(coeffs, realization, lambda, f, opts).u;
}

GridFunction discrete_apply(const Coefficients& coeffs, Complex lambda, const GridFunction& u) {
  const Grid& grid = u.grid();
  const std::size_t n = grid.size();
  const double h = grid.spacing();
  GridFunction out(grid);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double x = grid[i];
    const Complex d2 = (u[i + 1][0] - 2.0 * u[i][0] + u[i - 1][0]) / (h * h);
    const Complex du1 = (u[i + 1][0] - u[i - 1][0]) / (2.0 * h);
    const Complex du2 = (u[i + 1][1] - u[i - 1][1]) / (2.0 * h);
    out[i][0] = -d2 + coeffs.a.value(x) * du2 - lambda * u[i][0];
    out[i][1] = coeffs.b.value(x) * du1 + (coeffs.c.value(x) - lambda) * u[i][1];
  }
  return out;
}

}  // namespace mfunclab::odelab
