// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "mfunclab/numkit/cmatrix.hpp"
#include "mfunclab/odelab/coefficients.hpp"
#include "mfunclab/triplet/realization.hpp"
#include "mfunclab/triplet/scan.hpp"

namespace mfunclab::cli {

using json = nlohmann::json;

inline constexpr const char* kSchema = "mfunclab.scan/1";

/// Raised for malformed or inconsistent configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Tolerances {
  double ivp_tol = 1e-10;
  double den_eps = 1e-10;
  double tube_eps = 0.05;
  double flag_rel = 1e-8;
  double tol_linear = 1e-12;
  double cond_cap = 1e14;
};

struct OutputPaths {
  std::string csv = "scan.csv";
  std::string summary = "summary.json";
  std::string twins = "twins.json";
  std::string krein = "krein.json";
  std::string halfspace = "halfspace.csv";
};

struct TwinsSection {
  double x_lo = 0.0, x_hi = 0.0;
  Complex bump_height{};
  double hausdorff_threshold = 0.1;
  double m_tol = 1e-8;
};

struct KreinSection {
  std::vector<Complex> lambdas;
  std::size_t trials = 5;
  double tol = 1e-5;
};

struct Range {
  double min = 0.0, max = 0.0;
  std::size_t n = 1;
  std::vector<double> values() const;
};

struct HalfspaceSection {
  Range rho;
  Range arg_mu;
  Range abs_mu;
  std::vector<double> bvec;
  std::vector<double> direction;
  std::optional<Complex> c;
};

struct ScanConfig {
  json coefficients_descriptor;
  json realization_descriptor;
  std::optional<odelab::Coefficients> coefficients;
  std::optional<triplet::BoundaryRealization> realization;
  std::optional<triplet::LambdaWindow> window;
  std::size_t grid_n = 4001;
  Tolerances tolerances;
  OutputPaths output;
  std::optional<TwinsSection> twins;
  std::optional<KreinSection> krein;
  std::optional<HalfspaceSection> halfspace;
  std::uint64_t seed = 1;
};

/// Complex number: a JSON number or a [re, im] pair.
Complex parse_complex(const json& j, const std::string& where);
json complex_to_json(Complex z);

odelab::SmoothFunction parse_function(const json& desc, const std::string& where);
odelab::Coefficients parse_coefficients(const json& j);
triplet::BoundaryRealization parse_realization(const json& j);

/// Throws ConfigError.
ScanConfig parse_config(const json& j);
ScanConfig load_config(const std::string& path);

}  // namespace mfunclab::cli
