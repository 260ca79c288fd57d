// SPDX-License-Identifier: Apache-2.0

#include "mfunclab/numkit/ivp.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "mfunclab/error.hpp"

namespace mfunclab {

namespace {

// Dormand-Prince 5(4) tableau with Hairer's continuous extension.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

double weighted_rms(std::span<const Complex> v, std::span<const Complex> ya,
                    std::span<const Complex> yb, double tol) {
  double sum = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double sk = tol + tol * std::max(std::abs(ya[i]), std::abs(yb[i]));
    const double r = std::abs(v[i]) / sk;
    sum += r * r;
  }
  return std::sqrt(sum / static_cast<double>(std::max<std::size_t>(v.size(), 1)));
}

}  // namespace

Trajectory::Trajectory(std::size_t dimension, std::vector<double> abscissae)
    : dim_(dimension), t_(std::move(abscissae)), values_(dim_ * t_.size()) {}

Trajectory integrate_ivp(const OdeRhs& rhs, CVector y0, double t0, double t1,
                         std::span<const double> samples, const IvpOptions& opts) {
  const std::size_t m = y0.size();
  if (!(t1 > t0)) throw Error(ErrorCode::InvalidArgument, "integrate_ivp needs t1 > t0");
  for (std::size_t k = 0; k < samples.size(); ++k) {
    if (samples[k] < t0 || samples[k] > t1 || (k > 0 && samples[k] < samples[k - 1])) {
      throw Error(ErrorCode::InvalidArgument, "sample abscissae must be ascending within the span");
    }
  }
  Trajectory traj(m, std::vector<double>(samples.begin(), samples.end()));

  std::array<CVector, 7> k;
  for (auto& stage : k) stage.assign(m, Complex{});
  CVector y = std::move(y0), ynew(m), ytmp(m), err(m);
  std::array<CVector, 5> cont;
  for (auto& c : cont) c.assign(m, Complex{});

  double t = t0;
  std::size_t next_sample = 0;
  while (next_sample < samples.size() && samples[next_sample] == t0) {
    std::copy(y.begin(), y.end(), traj.at(next_sample).begin());
    ++next_sample;
  }

  rhs(t, y, k[0]);
  const double span = t1 - t0;

  // Initial step (Hairer's heuristic).
  double h;
  {
    const CVector zero(m);
    const double dnf = weighted_rms(k[0], y, zero, opts.tol);
    const double dny = weighted_rms(y, y, zero, opts.tol);
    h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : 0.01 * dny / dnf;
    h = std::min(h, span);
    for (std::size_t i = 0; i < m; ++i) ytmp[i] = y[i] + h * k[0][i];
    rhs(t + h, ytmp, k[1]);
    for (std::size_t i = 0; i < m; ++i) err[i] = k[1][i] - k[0][i];
    const double der2 = weighted_rms(err, y, zero, opts.tol) / h;
    const double der = std::max(std::abs(der2), dnf);
    const double h1 = der <= 1e-15 ? std::max(1e-6, h * 1e-3) : std::pow(0.01 / der, 0.2);
    h = std::min({100.0 * h, h1, span});
  }

  constexpr double safe = 0.9, beta = 0.04, expo1 = 0.2 - beta * 0.75;
  constexpr double facc1 = 1.0 / 0.2, facc2 = 1.0 / 10.0;
  double facold = 1e-4;
  bool last_rejected = false;
  std::size_t steps = 0;

  while (t < t1) {
    if (++steps > opts.max_steps) {
      throw Error(ErrorCode::StepUnderflow,
                  "step budget exhausted at t = " + std::to_string(t));
    }
    if (h < opts.h_min) {
      throw Error(ErrorCode::StepUnderflow, "step " + std::to_string(h) +
                                                " below h_min at t = " + std::to_string(t));
    }
    bool final_step = false;
    if (t + h >= t1 || t1 - (t + h) < opts.h_min) {
      h = t1 - t;
      final_step = true;
    }

    for (std::size_t i = 0; i < m; ++i) ytmp[i] = y[i] + h * a21 * k[0][i];
    rhs(t + c2 * h, ytmp, k[1]);
    for (std::size_t i = 0; i < m; ++i) ytmp[i] = y[i] + h * (a31 * k[0][i] + a32 * k[1][i]);
    rhs(t + c3 * h, ytmp, k[2]);
    for (std::size_t i = 0; i < m; ++i)
      ytmp[i] = y[i] + h * (a41 * k[0][i] + a42 * k[1][i] + a43 * k[2][i]);
    rhs(t + c4 * h, ytmp, k[3]);
    for (std::size_t i = 0; i < m; ++i)
      ytmp[i] = y[i] + h * (a51 * k[0][i] + a52 * k[1][i] + a53 * k[2][i] + a54 * k[3][i]);
    rhs(t + c5 * h, ytmp, k[4]);
    for (std::size_t i = 0; i < m; ++i)
      ytmp[i] = y[i] + h * (a61 * k[0][i] + a62 * k[1][i] + a63 * k[2][i] + a64 * k[3][i] +
                            a65 * k[4][i]);
    rhs(t + h, ytmp, k[5]);
    for (std::size_t i = 0; i < m; ++i)
      ynew[i] = y[i] + h * (a71 * k[0][i] + a73 * k[2][i] + a74 * k[3][i] + a75 * k[4][i] +
                            a76 * k[5][i]);
    rhs(t + h, ynew, k[6]);
    for (std::size_t i = 0; i < m; ++i)
      err[i] = h * (e1 * k[0][i] + e3 * k[2][i] + e4 * k[3][i] + e5 * k[4][i] + e6 * k[5][i] +
                    e7 * k[6][i]);

    const double e = weighted_rms(err, y, ynew, opts.tol);
    if (!std::isfinite(e)) {
      h *= 0.2;
      last_rejected = true;
      ++traj.rejected_steps;
      continue;
    }
    const double fac11 = std::pow(e, expo1);
    if (e <= 1.0) {
      // Continuous extension over [t, t + h].
      for (std::size_t i = 0; i < m; ++i) {
        const Complex ydiff = ynew[i] - y[i];
        const Complex bspl = h * k[0][i] - ydiff;
        cont[0][i] = y[i];
        cont[1][i] = ydiff;
        cont[2][i] = bspl;
        cont[3][i] = ydiff - h * k[6][i] - bspl;
        cont[4][i] = h * (d1 * k[0][i] + d3 * k[2][i] + d4 * k[3][i] + d5 * k[4][i] +
                          d6 * k[5][i] + d7 * k[6][i]);
      }
      const double tend = final_step ? t1 : t + h;
      while (next_sample < samples.size() && samples[next_sample] <= tend) {
        const double theta = (samples[next_sample] - t) / h;
        const double theta1 = 1.0 - theta;
        auto out = traj.at(next_sample);
        for (std::size_t i = 0; i < m; ++i) {
          out[i] = cont[0][i] +
                   theta * (cont[1][i] +
                            theta1 * (cont[2][i] + theta * (cont[3][i] + theta1 * cont[4][i])));
        }
        ++next_sample;
      }

      double fac = fac11 / std::pow(facold, beta);
      fac = std::max(facc2, std::min(facc1, fac / safe));
      facold = std::max(e, 1e-4);
      std::swap(y, ynew);
      std::swap(k[0], k[6]);
      t = tend;
      ++traj.accepted_steps;

      double hnew = h / fac;
      if (last_rejected) hnew = std::min(hnew, h);
      last_rejected = false;
      h = hnew;
      if (final_step) break;
    } else {
      h /= std::min(facc1, fac11 / safe);
      last_rejected = true;
      ++traj.rejected_steps;
    }
  }

  // Samples exactly at t1 missed by rounding.
  while (next_sample < samples.size()) {
    std::copy(y.begin(), y.end(), traj.at(next_sample).begin());
    ++next_sample;
  }
  traj.final_ = std::move(y);
  return traj;
}

}  // namespace mfunclab
