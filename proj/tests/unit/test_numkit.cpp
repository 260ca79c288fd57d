// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mfunclab/error.hpp"
#include "mfunclab/numkit/cmatrix.hpp"
#include "mfunclab/numkit/grid.hpp"
#include "mfunclab/numkit/ivp.hpp"
#include "mfunclab/numkit/linalg.hpp"
#include "oracles.hpp"

using namespace mfunclab;
using testing::cofactor_det;
using testing::expm;

namespace {
constexpr Complex kI{0.0, 1.0};

ErrorCode code_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an mfunclab::Error");
  return ErrorCode::InvalidArgument;
}
}  // namespace

TEST_CASE("CMatrix construction validates size and finiteness") {
  CHECK(code_of([] { CMatrix(2, 2, {1.0, 2.0, 3.0}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { CMatrix(1, 1, {Complex(NAN, 0.0)}); }) == ErrorCode::InvalidArgument);
  const CMatrix m{{1.0, 2.0}, {3.0, kI}};
  CHECK(m.rows() == 2);
  CHECK(m(1, 1) == kI);
  CHECK(m.adjoint()(1, 1) == -kI);
  CHECK(m.transpose()(0, 1) == 3.0);
  CHECK(m.norm_inf() == doctest::Approx(4.0));
}

TEST_CASE("matrix products and vector products") {
  const CMatrix a{{1.0, 2.0}, {3.0, 4.0}};
  const CMatrix b{{0.0, 1.0}, {1.0, 0.0}};
  const CMatrix ab = a * b;
  CHECK(ab(0, 0) == 2.0);
  CHECK(ab(1, 1) == 3.0);
  const CVector v = a * CVector{1.0, kI};
  CHECK(v[0] == Complex(1.0, 2.0));
  CHECK(v[1] == Complex(3.0, 4.0));
}

TEST_CASE("solve_linear examples") {
  const CVector x1 = solve_linear(CMatrix::identity(2), CVector{1.0, kI});
  CHECK(x1[0] == Complex(1.0));
  CHECK(x1[1] == kI);
  const CVector x2 = solve_linear(CMatrix{{0.0, 1.0}, {1.0, 0.0}}, CVector{1.0, 2.0});
  CHECK(std::abs(x2[0] - 2.0) < 1e-15);
  CHECK(std::abs(x2[1] - 1.0) < 1e-15);

  std::mt19937_64 rng(7);
  const CMatrix a = testing::random_matrix(rng, 4, 4);
  const CVector b = testing::random_vector(rng, 4);
  const CVector x = solve_linear(a, b);
  const CVector r = a * x;
  double res = 0.0;
  for (std::size_t i = 0; i < 4; ++i) res = std::max(res, std::abs(r[i] - b[i]));
  CHECK(res < 1e-12);
}

TEST_CASE("solve_linear rejects singular systems") {
  const CMatrix s{{1.0, 2.0}, {2.0, 4.0}};
  CHECK(code_of([&] { solve_linear(s, CVector{1.0, 1.0}); }) == ErrorCode::SingularMatrix);
  CHECK(code_of([&] { inverse(s); }) == ErrorCode::SingularMatrix);
  CHECK(LuFactorization(s).singular());
  // Nearly singular beyond the condition cap.
  const CMatrix ns{{1.0, 1.0}, {1.0, 1.0 + 1e-15}};
  CHECK(code_of([&] { solve_linear(ns, CVector{1.0, 0.0}); }) == ErrorCode::SingularMatrix);
}

TEST_CASE("det examples") {
  CHECK(det(CMatrix::identity(3)) == Complex(1.0));
  CHECK(std::abs(det(CMatrix{{2.0, 0.0}, {0.0, 3.0 * kI}}) - 6.0 * kI) < 1e-15);
  CHECK(det(CMatrix{{1.0, 2.0}, {2.0, 4.0}}) == Complex(0.0));
  CHECK(det(CMatrix{{0.0, 1.0}, {1.0, 0.0}}) == Complex(-1.0));
  std::mt19937_64 rng(11);
  for (int t = 0; t < 20; ++t) {
    const CMatrix a = testing::random_matrix(rng, 3, 3);
    CHECK(std::abs(det(a) - cofactor_det(a)) < 1e-12);
  }
}

TEST_CASE("LU inverse and condition") {
  std::mt19937_64 rng(3);
  const CMatrix a = testing::random_well_conditioned(rng, 5);
  const LuFactorization lu(a);
  CHECK_FALSE(lu.singular());
  CHECK(testing::max_abs_diff(a * lu.inverse(), CMatrix::identity(5)) < 1e-13);
  CHECK(lu.condition_inf() >= 1.0);
  CHECK(std::abs(lu.determinant() - cofactor_det(a)) < 1e-10 * std::abs(cofactor_det(a)));
}

TEST_CASE("tridiagonal solver matches dense solve, with and without pivoting") {
  std::mt19937_64 rng(5);
  for (bool weak_diagonal : {false, true}) {
    const std::size_t n = 9;
    CVector sub(n), diag(n), sup(n);
    for (std::size_t i = 0; i < n; ++i) {
      sub[i] = testing::random_complex(rng);
      sup[i] = testing::random_complex(rng);
      diag[i] = weak_diagonal ? 0.01 * testing::random_complex(rng)
                              : testing::random_complex(rng) + 4.0;
    }
    CMatrix dense(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      dense(i, i) = diag[i];
      if (i > 0) dense(i, i - 1) = sub[i];
      if (i + 1 < n) dense(i, i + 1) = sup[i];
    }
    const CVector rhs = testing::random_vector(rng, n);
    const CVector x = TridiagonalLu(sub, diag, sup).solve(rhs);
    const CVector ref = LuFactorization(dense).solve(rhs);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(x[i] - ref[i]) < 1e-10 * (1 + std::abs(ref[i])));
  }
}

TEST_CASE("grid shape") {
  CHECK(code_of([] { Grid(4); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { Grid(1); }) == ErrorCode::InvalidArgument);
  const Grid g(5);
  CHECK(g[0] == 0.0);
  CHECK(g[4] == 1.0);
  CHECK(g.spacing() == 0.25);
  CHECK(Grid(9).coarsened() == Grid(5));
  CHECK(Grid().size() == 4001);
}

TEST_CASE("quad_inner examples") {
  const Grid g(2001);
  const GridFunction one = GridFunction::sample(g, [](double) { return C2{1.0, 0.0}; });
  CHECK(std::abs(quad_inner(one, one) - 1.0) < 1e-14);
  const GridFunction s = GridFunction::sample(g, [](double x) {
    return C2{std::sin(std::numbers::pi * x), 0.0};
  });
  CHECK(std::abs(quad_inner(s, s) - 0.5) < 1e-10);

  const GridFunction f = GridFunction::sample(g, [](double x) {
    return C2{Complex(x, x * x), std::exp(Complex(0.0, 3.0 * x))};
  });
  const GridFunction h = GridFunction::sample(g, [](double x) {
    return C2{std::cos(2.0 * x), Complex(1.0 - x, 0.5)};
  });
  CHECK(std::abs(quad_inner(f, h) - std::conj(quad_inner(h, f))) < 1e-14);
  // Second component of <f, h>: \int e^{3ix} (1 - x + 0.5 i)^* ... checked only for symmetry;
  // the first term has a closed form.
  const GridFunction f1 = GridFunction::sample(g, [](double x) { return C2{x, 0.0}; });
  const GridFunction h1 = GridFunction::sample(g, [](double x) { return C2{std::exp(x), 0.0}; });
  CHECK(std::abs(quad_inner(f1, h1) - 1.0) < 1e-12);  // \int x e^x = 1

  CHECK(code_of([&] { quad_inner(one, GridFunction(Grid(5))); }) == ErrorCode::GridMismatch);
}

TEST_CASE("integrate_ivp examples") {
  const double pts[] = {0.0, 0.25, 0.5, 1.0};
  const Trajectory e = integrate_ivp(
      [](double, std::span<const Complex> y, std::span<Complex> dy) { dy[0] = y[0]; },
      CVector{1.0}, 0.0, 1.0, pts);
  CHECK(std::abs(e.final_state()[0] - std::exp(1.0)) < 1e-9);
  CHECK(std::abs(e.at(2)[0] - std::exp(0.5)) < 1e-9);
  CHECK(e.at(0)[0] == Complex(1.0));

  std::vector<double> many;
  for (int k = 0; k <= 50; ++k) many.push_back(k / 50.0 * 3.0);
  const Trajectory u = integrate_ivp(
      [](double, std::span<const Complex> y, std::span<Complex> dy) { dy[0] = kI * y[0]; },
      CVector{1.0}, 0.0, 3.0, many);
  for (std::size_t k = 0; k < u.size(); ++k) CHECK(std::abs(std::abs(u.at(k)[0]) - 1.0) < 1e-9);

  const Trajectory s = integrate_ivp(
      [](double, std::span<const Complex> y, std::span<Complex> dy) {
        dy[0] = y[1];
        dy[1] = -y[0];
      },
      CVector{0.0, 1.0}, 0.0, 1.0, {});
  CHECK(std::abs(s.final_state()[0] - std::sin(1.0)) < 1e-9);
}

TEST_CASE("integrate_ivp reports step underflow near a singularity") {
  // y' = y^2 / ... blows up at t = 1.
  const auto rhs = [](double t, std::span<const Complex> y, std::span<Complex> dy) {
    dy[0] = y[0] / ((1.0 - t) * (1.0 - t));
  };
  CHECK(code_of([&] { integrate_ivp(rhs, CVector{1.0}, 0.0, 1.0, {}); }) ==
        ErrorCode::StepUnderflow);
  CHECK(code_of([&] {
          const double bad[] = {0.5, 0.25};
          integrate_ivp(rhs, CVector{1.0}, 0.0, 0.9, bad);
        }) == ErrorCode::InvalidArgument);
}

TEST_CASE("matrix exponential oracle agrees with a diagonal case") {
  const CMatrix d{{1.0, 0.0}, {0.0, kI}};
  const CMatrix e = expm(d);
  CHECK(std::abs(e(0, 0) - std::exp(1.0)) < 1e-13);
  CHECK(std::abs(e(1, 1) - std::exp(kI)) < 1e-13);
}
