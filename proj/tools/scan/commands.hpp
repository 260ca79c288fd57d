// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "config.hpp"
#include "mfunclab/numkit/grid.hpp"
#include "mfunclab/odelab/backend.hpp"
#include "mfunclab/triplet/scan.hpp"

namespace mfunclab::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitBackend = 3,
  kExitHypothesis = 4,
  kExitSpectral = 5,
};

/// Failure carrying the process exit code.
class CommandError : public std::runtime_error {
 public:
  CommandError(int code, const std::string& what) : std::runtime_error(what), code_(code) {}
  int exit_code() const noexcept { return code_; }

 private:
  int code_;
};

struct RunOptions {
  std::filesystem::path out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::size_t workers = 1;
  std::optional<std::size_t> grid_n;
  /// Skip writing files; the returned objects still hold everything.
  bool write_files = true;
};

struct ScanResult {
  triplet::SpectralScan scan;
  std::vector<triplet::DetectedPoint> detected;
  std::vector<double> ess_dist;
  json summary;
};

/// Coefficients and realization checked, backend built. Throws CommandError
/// with kExitConfig or kExitBackend.
odelab::OdeBackend make_backend(const ScanConfig& cfg, const RunOptions& opts);

ScanResult run_scan(const ScanConfig& cfg, const RunOptions& opts);
json run_compare_twins(const ScanConfig& cfg, const RunOptions& opts);
json run_krein_verify(const ScanConfig& cfg, const RunOptions& opts);
/// Returns the CSV text.
std::string run_halfspace(const ScanConfig& cfg, const RunOptions& opts);

/// Trigonometric polynomial sum_{k<=8} (p_k cos k pi x + q_k sin k pi x) per
/// component, with the complex coefficient vector normalized to unit length.
GridFunction random_trig_field(const Grid& grid, std::mt19937_64& rng);

}  // namespace mfunclab::cli
