// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mfunclab/numkit/cmatrix.hpp"
#include "mfunclab/numkit/grid.hpp"

namespace mfunclab::triplet {

/// Boundary values of a kernel basis: column j holds Gamma_0 (resp. Gamma_1)
/// of basis element j.
struct BoundaryTraces {
  CMatrix gamma0;
  CMatrix gamma1;
};

struct KernelBasis {
  std::vector<GridFunction> elements;
  BoundaryTraces traces;
};

/// What the triplet engine needs from a concrete boundary problem, all at a
/// fixed spectral parameter. Implementations must be safe to call
/// concurrently from several threads.
class ProblemBackend {
 public:
  virtual ~ProblemBackend() = default;

  /// Dimension d of ker(A_max - lambda) and of the boundary spaces.
  virtual std::size_t defect_dimension() const = 0;
  virtual const Grid& grid() const = 0;

  /// Traces of a basis of ker(A_max - lambda) without sampling it on the grid.
  /// The basis must depend holomorphically on lambda (normalized at a fixed
  /// point, not at the boundary).
  virtual BoundaryTraces kernel_traces(Complex lambda) const = 0;

  virtual KernelBasis kernel_basis(Complex lambda) const = 0;

  /// Basis of ker(A'_max - lambda_bar), with traces (Gamma'_0, Gamma'_1) of the
  /// adjoint triplet.
  virtual KernelBasis adjoint_kernel_basis(Complex lambda_bar) const = 0;

  virtual CVector gamma0(const GridFunction& u) const = 0;
  virtual CVector gamma1(const GridFunction& u) const = 0;

  /// Solves (A - lambda) w = f with Gamma_0 w = 0.
  virtual GridFunction reference_resolvent(Complex lambda, const GridFunction& f) const = 0;

  /// Element z of ker(A_max - lambda) with Gamma_0 z = phi.
  virtual GridFunction poisson(Complex lambda, std::span<const Complex> phi) const = 0;
};

}  // namespace mfunclab::triplet
