// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "mfunclab/numkit/cmatrix.hpp"
#include "mfunclab/triplet/backend.hpp"
#include "mfunclab/triplet/realization.hpp"

namespace mfunclab::triplet {

enum class PointStatus { Ok, Spectral, EssTube, DirichletSpectrum, CoeffSingular };

std::string_view to_string(PointStatus status);

struct ScanPoint {
  Complex lambda;
  /// det of the characteristic matrix; zero exactly at eigenvalues.
  Complex char_det;
  /// det of Gamma_0 on the kernel; zero at reference eigenvalues.
  Complex dirichlet_det;
  /// ||M(lambda)||_inf, 0 when the M-function could not be formed.
  double inv_norm = 0.0;
  bool det_valid = false;
  PointStatus status = PointStatus::Ok;
};

struct SpectralScan {
  std::vector<ScanPoint> points;
  /// |char_det| below this marks a point spectral.
  double flag_threshold = 0.0;
  double dirichlet_threshold = 0.0;
};

struct ScanOptions {
  /// Points for which this returns true get PointStatus::EssTube. Their
  /// determinants are still recorded when the backend can evaluate them.
  std::function<bool(Complex)> excluded;
  std::size_t workers = 1;
  /// Relative threshold against the largest |det| over the scan.
  double flag_rel = 1e-8;
};

/// Evaluates the spectral diagnostics at every lambda. Never throws for
/// per-point failures; the result is independent of `workers`.
SpectralScan eig_scan(const ProblemBackend& backend, const BoundaryRealization& realization,
                      std::span<const Complex> lambdas, const ScanOptions& opts = {});

/// Rectangular lambda window, row-major with imaginary part outermost.
struct LambdaWindow {
  double re_min = 0.0, re_max = 0.0, im_min = 0.0, im_max = 0.0;
  std::size_t n_re = 1, n_im = 1;

  std::size_t size() const noexcept { return n_re * n_im; }
  Complex at(std::size_t i_re, std::size_t i_im) const;
  std::vector<Complex> points() const;
};

enum class DeterminantKind { Characteristic, Dirichlet };

struct DetectedPoint {
  Complex lambda;
  double abs_det = 0.0;
  bool excluded = false;
};

/// Locates zeros of the chosen determinant from a windowed scan: sign changes
/// of its real or imaginary part and local minima of its modulus along each
/// row seed a Muller iteration; a root is kept when it lies in the row's band
/// of the window and its |det| is below the scan threshold. Sorted by real part.
std::vector<DetectedPoint> detect_spectral_points(const ProblemBackend& backend,
                                                  const BoundaryRealization& realization,
                                                  const LambdaWindow& window,
                                                  const SpectralScan& scan,
                                                  const ScanOptions& opts = {},
                                                  DeterminantKind kind =
                                                      DeterminantKind::Characteristic);

/// Muller iteration for an analytic scalar function from three starting points.
/// Returns false when it does not converge or an evaluation throws.
bool muller_root(const std::function<Complex(Complex)>& f, Complex x0, Complex x1, Complex x2,
                 Complex& root, double rel_tol = 1e-13, std::size_t max_iter = 60);

}  // namespace mfunclab::triplet
