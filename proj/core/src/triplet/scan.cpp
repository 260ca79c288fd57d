// SPDX-License-Identifier: Apache-2.0

#include "mfunclab/triplet/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "mfunclab/error.hpp"
#include "mfunclab/numkit/linalg.hpp"
#include "mfunclab/triplet/engine.hpp"

namespace mfunclab::triplet {

namespace {

ScanPoint evaluate_point(const ProblemBackend& backend, const BoundaryRealization& realization,
                         Complex lambda, const ScanOptions& opts) {
  ScanPoint p;
  p.lambda = lambda;
  const bool excluded = opts.excluded && opts.excluded(lambda);
  BoundaryTraces traces;
  try {
    traces = backend.kernel_traces(lambda);
  } catch (const Error&) {
    p.status = excluded ? PointStatus::EssTube : PointStatus::CoeffSingular;
    return p;
  }
  p.char_det = det(characteristic_matrix(traces, realization));
  p.dirichlet_det = det(traces.gamma0);
  p.det_valid = std::isfinite(std::abs(p.char_det)) && std::isfinite(std::abs(p.dirichlet_det));
  if (!p.det_valid) {
    p.status = excluded ? PointStatus::EssTube : PointStatus::CoeffSingular;
    return p;
  }
  if (realization.reduced_dimension() > 0) {
    try {
      p.inv_norm = mfunction_via_characteristic(traces, realization).norm_inf();
    } catch (const Error&) {
      p.inv_norm = 0.0;
    }
  }
  p.status = excluded ? PointStatus::EssTube : PointStatus::Ok;
  return p;
}

double reference_scale(const std::vector<ScanPoint>& points, bool dirichlet) {
  double best_in = 0.0, best_all = 0.0;
  for (const auto& p : points) {
    if (!p.det_valid) continue;
    const double v = std::abs(dirichlet ? p.dirichlet_det : p.char_det);
    best_all = std::max(best_all, v);
    if (p.status != PointStatus::EssTube) best_in = std::max(best_in, v);
  }
  return best_in > 0.0 ? best_in : best_all;
}

Complex determinant_of(const ProblemBackend& backend, const BoundaryRealization& realization,
                       Complex lambda, DeterminantKind kind) {
  const BoundaryTraces traces = backend.kernel_traces(lambda);
  if (kind == DeterminantKind::Dirichlet) return det(traces.gamma0);
  return det(characteristic_matrix(traces, realization));
}

double axis_value(double lo, double hi, std::size_t n, std::size_t i) {
  if (n <= 1) return 0.5 * (lo + hi);
  if (i + 1 == n) return hi;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

}  // namespace

std::string_view to_string(PointStatus status) {
  switch (status) {
    case PointStatus::Ok: return "ok";
    case PointStatus::Spectral: return "spectral";
    case PointStatus::EssTube: return "ess_tube";
    case PointStatus::DirichletSpectrum: return "dirichlet_spectrum";
    case PointStatus::CoeffSingular: return "coeff_singular";
  }
  return "unknown";
}

SpectralScan eig_scan(const ProblemBackend& backend, const BoundaryRealization& realization,
                      std::span<const Complex> lambdas, const ScanOptions& opts) {
  SpectralScan scan;
  scan.points.resize(lambdas.size());
  const std::size_t workers = std::max<std::size_t>(1, std::min(opts.workers, lambdas.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < lambdas.size(); ++i)
      scan.points[i] = evaluate_point(backend, realization, lambdas[i], opts);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < lambdas.size(); i = next++)
          scan.points[i] = evaluate_point(backend, realization, lambdas[i], opts);
      });
    }
    for (auto& t : pool) t.join();
  }

  scan.flag_threshold = opts.flag_rel * reference_scale(scan.points, false);
  scan.dirichlet_threshold = opts.flag_rel * reference_scale(scan.points, true);
  const bool has_m = realization.reduced_dimension() > 0;
  for (auto& p : scan.points) {
    if (p.status != PointStatus::Ok) continue;
    if (std::abs(p.char_det) < scan.flag_threshold || (has_m && p.inv_norm == 0.0)) {
      p.status = PointStatus::Spectral;
    } else if (std::abs(p.dirichlet_det) < scan.dirichlet_threshold) {
      p.status = PointStatus::DirichletSpectrum;
    }
  }
  return scan;
}

Complex LambdaWindow::at(std::size_t i_re, std::size_t i_im) const {
  return {axis_value(re_min, re_max, n_re, i_re), axis_value(im_min, im_max, n_im, i_im)};
}

std::vector<Complex> LambdaWindow::points() const {
  std::vector<Complex> out;
  out.reserve(size());
  for (std::size_t j = 0; j < n_im; ++j)
    for (std::size_t i = 0; i < n_re; ++i) out.push_back(at(i, j));
  return out;
}

bool muller_root(const std::function<Complex(Complex)>& f, Complex x0, Complex x1, Complex x2,
                 Complex& root, double rel_tol, std::size_t max_iter) {
  try {
    Complex f0 = f(x0), f1 = f(x1), f2 = f(x2);
    for (std::size_t it = 0; it < max_iter; ++it) {
      if (f2 == Complex{}) {
        root = x2;
        return true;
      }
      const Complex h1 = x1 - x0, h2 = x2 - x1;
      if (h1 == Complex{} || h2 == Complex{} || h1 + h2 == Complex{}) return false;
      const Complex d1 = (f1 - f0) / h1, d2 = (f2 - f1) / h2;
      const Complex a = (d2 - d1) / (h2 + h1);
      const Complex b = a * h2 + d2;
      const Complex disc = std::sqrt(b * b - 4.0 * a * f2);
      const Complex den = std::abs(b + disc) >= std::abs(b - disc) ? b + disc : b - disc;
      if (den == Complex{}) return false;
      const Complex dx = -2.0 * f2 / den;
      const Complex x3 = x2 + dx;
      if (!std::isfinite(x3.real()) || !std::isfinite(x3.imag())) return false;
      x0 = x1;
      f0 = f1;
      x1 = x2;
      f1 = f2;
      x2 = x3;
      f2 = f(x3);
      if (std::abs(dx) <= rel_tol * std::max(1.0, std::abs(x3))) {
        root = x3;
        return true;
      }
    }
  } catch (const std::exception&) {
    return false;
  }
  return false;
}

std::vector<DetectedPoint> detect_spectral_points(const ProblemBackend& backend,
                                                  const BoundaryRealization& realization,
                                                  const LambdaWindow& window,
                                                  const SpectralScan& scan,
                                                  const ScanOptions& opts, DeterminantKind kind) {
  std::vector<DetectedPoint> found;
  if (scan.points.size() != window.size()) {
    throw Error(ErrorCode::InvalidArgument, "scan does not match the window layout");
  }
  if (window.n_re < 2) return found;
  const auto value = [&](const ScanPoint& p) {
    return kind == DeterminantKind::Dirichlet ? p.dirichlet_det : p.char_det;
  };
  const double threshold =
      kind == DeterminantKind::Dirichlet ? scan.dirichlet_threshold : scan.flag_threshold;
  const auto f = [&](Complex lambda) {
    return determinant_of(backend, realization, lambda, kind);
  };

  const double d_re = (window.re_max - window.re_min) / static_cast<double>(window.n_re - 1);
  const double d_im = window.n_im > 1
                          ? (window.im_max - window.im_min) / static_cast<double>(window.n_im - 1)
                          : 0.0;
  const double im_half_band =
      window.n_im > 1 ? 0.5 * d_im : std::max(1e-6, 0.5 * (window.im_max - window.im_min));

  const auto accept = [&](Complex root, double re_lo, double re_hi, double im_row) {
    const double slack = 1e-9 * std::max(1.0, std::abs(root));
    if (root.real() < window.re_min - slack || root.real() > window.re_max + slack) return;
    if (root.real() < re_lo - d_re || root.real() > re_hi + d_re) return;
    if (std::abs(root.imag() - im_row) > im_half_band + slack) return;
    if (window.n_im > 1 &&
        (root.imag() < window.im_min - slack || root.imag() > window.im_max + slack)) {
      return;
    }
    for (const auto& existing : found) {
      if (std::abs(existing.lambda - root) <= 1e-7 * std::max(1.0, std::abs(root))) return;
    }
    double mag;
    try {
      mag = std::abs(f(root));
    } catch (const std::exception&) {
      return;
    }
    if (!(mag < threshold)) return;
    found.push_back({root, mag, opts.excluded && opts.excluded(root)});
  };

  for (std::size_t j = 0; j < window.n_im; ++j) {
    const double im_row = window.at(0, j).imag();
    const auto point = [&](std::size_t i) -> const ScanPoint& {
      return scan.points[j * window.n_re + i];
    };
    for (std::size_t i = 0; i + 1 < window.n_re; ++i) {
      const ScanPoint& p = point(i);
      const ScanPoint& q = point(i + 1);
      if (!p.det_valid || !q.det_valid) continue;
      const Complex dp = value(p), dq = value(q);
      const bool re_change = dp.real() * dq.real() <= 0.0;
      const bool im_significant = std::abs(dp.imag()) > 1e-8 * std::abs(dp) &&
                                  std::abs(dq.imag()) > 1e-8 * std::abs(dq);
      const bool im_change = im_significant && dp.imag() * dq.imag() < 0.0;
      bool local_min = false;
      if (i > 0 && point(i - 1).det_valid) {
        const double a = std::abs(value(point(i - 1))), b = std::abs(dp), c = std::abs(dq);
        local_min = b < a && b <= c;
      }
      Complex root;
      if (re_change || im_change) {
        const Complex mid = 0.5 * (p.lambda + q.lambda);
        if (muller_root(f, p.lambda, mid, q.lambda, root)) {
          accept(root, p.lambda.real(), q.lambda.real(), im_row);
        }
      }
      if (local_min) {
        const Complex prev = point(i - 1).lambda;
        if (muller_root(f, prev, p.lambda, q.lambda, root)) {
          accept(root, prev.real(), q.lambda.real(), im_row);
        }
      }
    }
  }
  std::sort(found.begin(), found.end(), [](const DetectedPoint& a, const DetectedPoint& b) {
    return a.lambda.real() < b.lambda.real() ||
           (a.lambda.real() == b.lambda.real() && a.lambda.imag() < b.lambda.imag());
  });
  return found;
}

}  // namespace mfunclab::triplet
