// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mfunclab {

// Failure categories shared by every module. Several of them are not bugs but
// spectral information: a SpectralPoint at lambda means lambda is an eigenvalue
// of the realization being evaluated.
enum class ErrorCode {
  SingularMatrix,
  StepUnderflow,
  GridMismatch,
  InvalidArgument,
  DirichletSpectrum,
  SpectralPoint,
  SamplerFailed,
  CoefficientSingularity,
  NeumannEigenvalue,
  BracketSingular,
  HypothesisViolated,
  SectorViolation,
  DegenerateRoots,
  SymbolPole,
  InvalidRealization,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mfunclab
