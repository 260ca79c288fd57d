// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mfunclab/error.hpp"
#include "mfunclab/odelab/backend.hpp"
#include "mfunclab/odelab/coefficients.hpp"
#include "mfunclab/odelab/essential.hpp"
#include "mfunclab/odelab/kernel.hpp"
#include "mfunclab/odelab/resolvent.hpp"
#include "mfunclab/odelab/twins.hpp"
#include "mfunclab/triplet/engine.hpp"
#include "oracles.hpp"

using namespace mfunclab;
using namespace mfunclab::odelab;
using triplet::BoundaryRealization;

namespace {

constexpr double kPi = std::numbers::pi;
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

SmoothFunction poly(std::vector<Complex> c) { return SmoothFunction::polynomial(std::move(c)); }

Coefficients generic() {
  return {poly({0.5, Complex(0.3, 0.1)}),
          SmoothFunction::trig({{TrigTerm::Kind::Cos, 0.4, kPi, 0.0},
                                {TrigTerm::Kind::Cos, Complex(0.0, 0.2), 0.0, 0.0}}),
          poly({Complex(2.0, 0.5), 1.0})};
}

Coefficients twin_base() {
  return {poly({kI}), SmoothFunction::bump_zero(0.4, 0.6, SmoothFunction::constant(1.0)),
          poly({0.0, 1.0})};
}

std::vector<double> chebyshev_points(int n) {
  std::vector<double> x;
  for (int k = 0; k < n; ++k) {
    x.push_back(0.5 - 0.5 * std::cos(kPi * (k + 0.5) / n));
  }
  std::sort(x.begin(), x.end());
  return x;
}

// (a g - 1) u'' + a g' u' - lambda u at x, with u'' from a central difference of u'.
Complex equation_residual(const Coefficients& co, Complex lambda, double x, bool second) {
  const double h = 1e-4;
  const double pts[] = {x - h, x, x + h};
  const KernelPair kp = kernel_pair(co, lambda, pts);
  const auto& y = second ? kp.y2 : kp.y1;
  const Complex upp = (y[2].deriv - y[0].deriv) / (2.0 * h);
  const LocalTerms t = local_terms(co, lambda, x, 1e-10);
  return t.bracket * upp + t.a.value * t.dg * y[1].deriv - lambda * y[1].value;
}

}  // namespace

TEST_CASE("polynomial and trig coefficients") {
  const SmoothFunction p = poly({1.0, 2.0, Complex(0.0, 3.0)});
  const Jet j = p(0.5);
  CHECK(std::abs(j.value - Complex(2.0, 0.75)) < 1e-15);
  CHECK(std::abs(j.deriv - Complex(2.0, 3.0)) < 1e-15);
  const SmoothFunction t = SmoothFunction::trig({{TrigTerm::Kind::Sin, 2.0, 3.0, 0.1},
                                                 {TrigTerm::Kind::Exp, kI, 1.0, 0.0}});
  const double x = 0.3;
  const Complex want = 2.0 * std::sin(3 * x + 0.1) + kI * std::exp(kI * x);
  const Complex dwant = 6.0 * std::cos(3 * x + 0.1) + kI * kI * std::exp(kI * x);
  CHECK(std::abs(t(x).value - want) < 1e-14);
  CHECK(std::abs(t(x).deriv - dwant) < 1e-14);
  CHECK(p.tag() == "polynomial");
  CHECK(t.tag() == "trig");
  CHECK((p + t).value(x) == p.value(x) + t.value(x));
  CHECK((p * t)(x).deriv == p(x).deriv * t(x).value + p(x).value * t(x).deriv);
}

TEST_CASE("bump constructions") {
  const SmoothFunction z = SmoothFunction::bump_zero(0.4, 0.6, SmoothFunction::constant(2.0));
  for (double x : {0.4, 0.45, 0.5, 0.6}) {
    CHECK(z(x).value == Complex(0.0));
    CHECK(z(x).deriv == Complex(0.0));
  }
  CHECK(std::abs(z.value(0.9)) > 0.1);
  CHECK(std::abs(z.value(0.0)) > 0.1);
  const SmoothFunction b = SmoothFunction::bump(0.4, 0.6, 2.0);
  CHECK(std::abs(b.value(0.5) - 2.0 * std::exp(-1.0)) < 1e-15);
  CHECK(b.value(0.3) == Complex(0.0));
  CHECK(b.value(0.4) == Complex(0.0));
  CHECK(b.value(0.6) == Complex(0.0));
  CHECK(b.value(0.7) == Complex(0.0));
  CHECK(code_of([] { SmoothFunction::bump(0.6, 0.4, 1.0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("coefficient validation") {
  CHECK_NOTHROW(validate(generic()));
  CHECK_NOTHROW(validate(twin_base()));
  const SmoothFunction wrong([](double x) { return Jet{x * x, 0.0}; }, "polynomial");
  Coefficients bad = generic();
  bad.a = wrong;
  CHECK(code_of([&] { validate(bad); }) == ErrorCode::InvalidArgument);
  const SmoothFunction nan([](double) { return Jet{Complex(NAN, 0.0), 0.0}; }, "polynomial");
  bad.a = nan;
  CHECK(code_of([&] { validate(bad); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("q_alpha_beta") {
  const Coefficients no_a{poly({0.0}), poly({1.0, 1.0}), poly({0.0, 1.0})};
  for (Complex lambda : {Complex(2.0, 1.0), Complex(-3.0, 0.0)}) {
    const QAlphaBeta q = q_alpha_beta(no_a, lambda, 0.7);
    CHECK(q.q == Complex(0.0));
    CHECK(std::abs(q.alpha - 1.0) < 1e-15);
    CHECK(std::abs(q.beta + 1.0) < 1e-15);
  }

  // a = x, b = x^2, c = 0, lambda = -1: Q = 2 x^2 / (1 + x^3).
  const Coefficients co{poly({0.0, 1.0}), poly({0.0, 0.0, 1.0}), poly({0.0})};
  const QAlphaBeta at1 = q_alpha_beta(co, -1.0, 1.0);
  const std::size_t n = 20001;
  const double h = 1.0 / (n - 1);
  double simpson = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double x = k * h;
    const double w = (k == 0 || k == n - 1) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    simpson += w * 2.0 * x * x / (1.0 + x * x * x);
  }
  simpson *= h / 3.0;
  CHECK(std::abs(at1.alpha - std::exp(simpson)) < 1e-8);
  CHECK(std::abs(at1.alpha - std::pow(2.0, 2.0 / 3.0)) < 1e-8);
  CHECK(std::abs(at1.q - 1.0) < 1e-14);

  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> ux(0.05, 0.95);
  const Coefficients g = generic();
  for (int t = 0; t < 5; ++t) {
    const double x = ux(rng);
    const double dx = 1e-4;
    const Complex lam(-1.0, 0.5);
    const Complex la = std::log(q_alpha_beta(g, lam, x + dx).alpha);
    const Complex lb = std::log(q_alpha_beta(g, lam, x - dx).alpha);
    CHECK(std::abs((la - lb) / (2 * dx) - q_alpha_beta(g, lam, x).q) < 1e-7);
  }

  const Coefficients sing{poly({1.0}), poly({1.0}), poly({0.0, 1.0})};
  CHECK(code_of([&] { q_alpha_beta(sing, 0.5, 1.0); }) == ErrorCode::CoefficientSingularity);
  // lambda = a b + c at x = 0.5 makes the bracket vanish.
  CHECK(code_of([&] { local_terms(sing, 1.5, 0.5, 1e-10); }) == ErrorCode::CoefficientSingularity);
}

TEST_CASE("kernel_pair on the decoupled family") {
  const Coefficients co = Coefficients::decoupled();
  const KernelPair kp = kernel_pair(co, -1.0);
  CHECK(std::abs(kp.y1_end.value - std::cosh(1.0)) < 1e-9);
  CHECK(std::abs(kp.y2_end.value - std::sinh(1.0)) < 1e-9);
  CHECK(std::abs(kp.y1_end.deriv - std::sinh(1.0)) < 1e-9);
  const KernelPair at_pi = kernel_pair(co, kPi * kPi);
  CHECK(std::abs(at_pi.y2_end.value) < 1e-8);

  const double pts[] = {0.0, 0.5, 1.0};
  const KernelPair s = kernel_pair(generic(), Complex(-2.0, 0.5), pts);
  CHECK(s.y1[0].value == Complex(1.0));
  CHECK(s.y1[0].deriv == Complex(0.0));
  CHECK(s.y2[0].value == Complex(0.0));
  CHECK(s.y2[0].deriv == Complex(1.0));
  CHECK(s.y1[2].value == s.y1_end.value);
}

TEST_CASE("kernel_pair solves the reduced equation") {
  const Coefficients g = generic();
  for (Complex lambda : {Complex(-2.0, 0.5), Complex(1.0, 1.0)}) {
    for (double x : chebyshev_points(16)) {
      for (bool second : {false, true}) {
        CHECK(std::abs(equation_residual(g, lambda, x, second)) < 1e-7);
      }
    }
  }
}

TEST_CASE("modified Abel identity") {
  std::vector<double> xs;
  for (int k = 0; k <= 40; ++k) xs.push_back(k / 40.0);
  for (const Coefficients& co : {generic(), twin_base(), Coefficients::decoupled()}) {
    for (Complex lambda : {Complex(-2.0, 0.5), Complex(5.0, -1.5)}) {
      const KernelPair kp = kernel_pair(co, lambda, xs);
      for (std::size_t k = 0; k < xs.size(); ++k) {
        const Complex w = kp.alpha[k] * (kp.y1[k].value * kp.y2[k].deriv -
                                         kp.y2[k].value * kp.y1[k].deriv);
        CHECK(std::abs(w - 1.0) < 1e-8);
      }
    }
  }
}

TEST_CASE("u2 of kernel elements is b u1' / (lambda - c)") {
  const Coefficients g = generic();
  const OdeBackend backend(g, Grid(201));
  const Complex lambda(-1.0, 0.3);
  const auto basis = backend.kernel_basis(lambda);
  const KernelPair kp = kernel_pair(g, lambda, backend.grid().points());
  for (std::size_t k = 0; k < 201; k += 20) {
    const double x = backend.grid()[k];
    const Complex g_x = g.b.value(x) / (lambda - g.c.value(x));
    CHECK(std::abs(basis.elements[0][k][1] - g_x * kp.y1[k].deriv) < 1e-13);
    CHECK(std::abs(basis.elements[1][k][1] - g_x * kp.y2[k].deriv) < 1e-13);
  }
}

TEST_CASE("gamma_traces") {
  const Coefficients no_a{poly({0.0}), poly({1.0}), poly({0.0})};
  const TracePair one = gamma_traces(no_a, {1.0, 0.0, 1.0, 0.0, {}, {}}, -1.0);
  CHECK(one.gamma0[0] == Complex(1.0));
  CHECK(one.gamma0[1] == Complex(1.0));
  CHECK(one.gamma1[0] == Complex(0.0));
  CHECK(one.gamma1[1] == Complex(0.0));

  const Coefficients dec = Coefficients::decoupled();
  const TracePair ch =
      gamma_traces(dec, {1.0, 0.0, std::cosh(1.0), std::sinh(1.0), {}, {}}, -1.0);
  CHECK(ch.gamma0[0] == Complex(std::cosh(1.0)));
  CHECK(ch.gamma0[1] == Complex(1.0));
  CHECK(ch.gamma1[0] == Complex(-std::sinh(1.0)));
  CHECK(ch.gamma1[1] == Complex(0.0));

  // Linearity on kernel data of generic coefficients.
  const Coefficients g = generic();
  const Complex lambda(-2.0, 0.5);
  const KernelPair kp = kernel_pair(g, lambda);
  std::mt19937_64 rng(8);
  for (int t = 0; t < 5; ++t) {
    const Complex c1 = testing::random_complex(rng), c2 = testing::random_complex(rng);
    const TracePair tr = gamma_traces(
        g, {c1, c2, c1 * kp.y1_end.value + c2 * kp.y2_end.value,
            c1 * kp.y1_end.deriv + c2 * kp.y2_end.deriv, {}, {}},
        lambda);
    const CVector coeff{c1, c2};
    const CVector g0 = kp.gamma0 * coeff;
    const CVector g1 = kp.gamma1 * coeff;
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK(std::abs(tr.gamma0[i] - g0[i]) < 1e-12);
      CHECK(std::abs(tr.gamma1[i] - g1[i]) < 1e-12);
    }
  }
  // u2 given explicitly wins over recovery.
  const TracePair given = gamma_traces(g, {0.0, 0.0, 0.0, 0.0, Complex(2.0), Complex(3.0)}, lambda);
  CHECK(given.gamma1[0] == g.a.value(1.0) * 3.0);
  CHECK(given.gamma1[1] == -g.a.value(0.0) * 2.0);

  const Coefficients sing{poly({1.0}), poly({1.0}), poly({0.0, 1.0})};
  CHECK(code_of([&] { gamma_traces(sing, {1.0, 1.0, 1.0, 1.0, {}, {}}, 1.0); }) ==
        ErrorCode::CoefficientSingularity);
}

TEST_CASE("mfn_closed_form") {
  const Coefficients dec = Coefficients::decoupled();
  const CMatrix m = mfn_closed_form(dec, -1.0);
  CHECK(std::abs(m(0, 0) + 1.3130352855) < 1e-8);
  CHECK(std::abs(m(0, 0) + std::cosh(1.0) / std::sinh(1.0)) < 1e-8);
  CHECK(std::abs(m(1, 0) + 0.8509181282) < 1e-8);
  CHECK(std::abs(m(1, 0) + 1.0 / std::sinh(1.0)) < 1e-8);

  CHECK(code_of([&] { mfn_closed_form(dec, kPi * kPi); }) == ErrorCode::NeumannEigenvalue);
  // a b + c = 1, so lambda = 1 zeroes both brackets.
  const Coefficients flat{poly({1.0}), poly({1.0}), poly({0.0})};
  CHECK(code_of([&] { mfn_closed_form(flat, 1.0); }) == ErrorCode::BracketSingular);
}

TEST_CASE("mfn_closed_form against the boundary-matrix oracle") {
  const Coefficients g = generic();
  const OdeBackend backend(g, Grid(101));
  for (Complex lambda : {Complex(-2.0, 0.5), Complex(-1.0, 0.0), Complex(1.0, 1.0)}) {
    const CMatrix oracle =
        triplet::mfunction(backend, BoundaryRealization::neumann(2), lambda).m;
    const MfnComparison cmp = compare_mfn(g, lambda, oracle);
    CHECK(cmp.m11_m21_agree);
    CHECK(cmp.rel_diff(0, 0).real() < 1e-8);
    CHECK(cmp.rel_diff(1, 0).real() < 1e-8);
    // The closed-form m22 has the opposite sign; its m12 lacks the
    // Wronskian factor -1 / alpha(1).
    CHECK(std::abs(cmp.ratio_m22 + 1.0) < 1e-8);
    CHECK(std::abs(cmp.ratio_m12 - cmp.predicted_ratio_m12) < 1e-8);
    CHECK(cmp.report().find("m22") != std::string::npos);
  }
}

TEST_CASE("backend traces from grid samples") {
  const OdeBackend backend(Coefficients::decoupled());
  const GridFunction u = GridFunction::sample(backend.grid(), [](double x) {
    return C2{std::cosh(x), 0.0};
  });
  const CVector g0 = backend.gamma0(u);
  const CVector g1 = backend.gamma1(u);
  CHECK(std::abs(g0[0] - std::cosh(1.0)) < 1e-14);
  CHECK(std::abs(g0[1] - 1.0) < 1e-14);
  CHECK(std::abs(g1[0] + std::sinh(1.0)) < 1e-10);
  CHECK(std::abs(g1[1]) < 1e-10);
  CHECK(code_of([&] { backend.gamma0(GridFunction(Grid(5))); }) == ErrorCode::GridMismatch);
  CHECK(backend.defect_dimension() == 2);
  CHECK(backend.in_tube(0.01));
  CHECK_FALSE(backend.in_tube(-1.0));
}

TEST_CASE("poisson reproduces kernel elements and kernel elements solve the system") {
  const OdeBackend backend(generic());
  const Complex lambda(-2.0, 0.5);
  const auto basis = backend.kernel_basis(lambda);
  for (const GridFunction& z : basis.elements) {
    const GridFunction back = backend.poisson(lambda, backend.gamma0(z));
    CHECK(l2_norm(back - z) < 1e-10 * l2_norm(z));
    GridFunction r = discrete_apply(backend.coefficients(), lambda, z);
    CHECK(l2_norm(r) < 1e-6 * l2_norm(z));
  }
  CHECK(code_of([&] { backend.poisson(lambda, CVector{1.0}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("adjoint kernel elements solve the adjoint system") {
  const Coefficients g = generic();
  const OdeBackend backend(g);
  const Complex mu(-2.0, -0.5);
  const auto adj = backend.adjoint_kernel_basis(mu);
  const Grid& grid = backend.grid();
  const double h = grid.spacing();
  for (const GridFunction& v : adj.elements) {
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < grid.size(); i += 37) {
      const double x = grid[i];
      const Complex d2 = (v[i + 1][0] - 2.0 * v[i][0] + v[i - 1][0]) / (h * h);
      auto bv2 = [&](std::size_t k) { return std::conj(g.b.value(grid[k])) * v[k][1]; };
      auto av1 = [&](std::size_t k) { return std::conj(g.a.value(grid[k])) * v[k][0]; };
      const Complex r1 = -d2 - (bv2(i + 1) - bv2(i - 1)) / (2 * h) - mu * v[i][0];
      const Complex r2 =
          -(av1(i + 1) - av1(i - 1)) / (2 * h) + (std::conj(g.c.value(x)) - mu) * v[i][1];
      worst = std::max({worst, std::abs(r1), std::abs(r2)});
    }
    CHECK(worst < 1e-5);
  }
  CHECK(adj.traces.gamma0(1, 0) == Complex(1.0));
  CHECK(adj.traces.gamma0(1, 1) == Complex(0.0));
}

TEST_CASE("reference resolvent") {
  const Coefficients g = generic();
  const OdeBackend backend(g);
  const Complex lambda(1.0, 1.0);
  const GridFunction f = GridFunction::sample(backend.grid(), [](double x) {
    return C2{Complex(std::cos(3 * x), x), Complex(1.0 - x * x, std::sin(2 * x))};
  });
  const GridFunction w = backend.reference_resolvent(lambda, f);
  const CVector g0 = backend.gamma0(w);
  CHECK(g0[0] == Complex(0.0));
  CHECK(g0[1] == Complex(0.0));
  GridFunction r = discrete_apply(g, lambda, w) - f;
  r[0] = C2{};
  r[r.size() - 1] = C2{};
  CHECK(l2_norm(r) < 1e-5 * l2_norm(f));
  const GridFunction d = direct_resolvent(g, BoundaryRealization::dirichlet(2), lambda, f);
  CHECK(l2_norm(w - d) < 1e-7 * l2_norm(d));

  const OdeBackend dec(Coefficients::decoupled());
  const GridFunction fd(dec.grid());
  CHECK(code_of([&] { dec.reference_resolvent(kPi * kPi, fd); }) ==
        ErrorCode::DirichletSpectrum);
}

TEST_CASE("direct_resolvent examples") {
  const Coefficients dec = Coefficients::decoupled();
  const auto neu = BoundaryRealization::neumann(2);
  const Grid grid;
  CHECK(l2_norm(direct_resolvent(dec, neu, -1.0, GridFunction(grid))) == 0.0);

  const double q = kPi / (kPi * kPi + 1.0);
  const double amp = q * (1.0 + std::cosh(1.0)) / std::sinh(1.0);
  const GridFunction f = GridFunction::sample(grid, [](double x) {
    return C2{std::sin(kPi * x), Complex(x, 1.0 - x)};
  });
  const DirectSolution sol = direct_resolvent_solve(dec, neu, -1.0, f);
  double err = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double x = grid[k];
    const double u1 = std::sin(kPi * x) / (kPi * kPi + 1.0) + amp * std::cosh(x) - q * std::sinh(x);
    err = std::max(err, std::abs(sol.u[k][0] - u1));
    // u2 = f2 / (c - lambda) = f2 at lambda = -1.
    err = std::max(err, std::abs(sol.u[k][1] - Complex(x, 1.0 - x)));
  }
  CHECK(err < 1e-6);
  CHECK(sol.error_estimate < 1e-5);
  CHECK(sol.error_estimate > 0.0);
}

TEST_CASE("direct_resolvent residual and boundary condition, generic coefficients") {
  const Coefficients g = generic();
  const OdeBackend backend(g);
  const CMatrix b{{0.5, Complex(0.0, 0.2)}, {Complex(0.0, 0.2), -0.3}};
  const auto real = BoundaryRealization::matrix(b);
  std::mt19937_64 rng(12);
  for (Complex lambda : {Complex(-1.0, 0.0), Complex(4.0, -1.5)}) {
    const Complex c1 = testing::random_complex(rng), c2 = testing::random_complex(rng);
    const GridFunction f = GridFunction::sample(backend.grid(), [&](double x) {
      return C2{c1 * std::cos(2 * kPi * x) + c2 * x, c2 * std::sin(kPi * x)};
    });
    const GridFunction w = direct_resolvent(g, real, lambda, f);
    GridFunction r = discrete_apply(g, lambda, w) - f;
    r[0] = C2{};
    r[r.size() - 1] = C2{};
    CHECK(l2_norm(r) < 1e-6);
    CHECK(l2_norm(r) < 1e-5 * l2_norm(f));
    const CVector g0 = backend.gamma0(w);
    const CVector g1 = backend.gamma1(w);
    CVector stacked{g0[0], g0[1], g1[0], g1[1]};
    const CVector bc = real.condition_rows() * stacked;
    CHECK(std::abs(bc[0]) < 1e-8);
    CHECK(std::abs(bc[1]) < 1e-8);
  }
}

TEST_CASE("direct_resolvent errors") {
  const Coefficients dec = Coefficients::decoupled();
  const GridFunction f = GridFunction::sample(Grid(401), [](double x) { return C2{x, 0.0}; });
  CHECK(code_of([&] { direct_resolvent(dec, BoundaryRealization::neumann(2), 0.0, f); }) ==
        ErrorCode::CoefficientSingularity);
  DirectResolventOptions opts;
  opts.cond_cap = 10.0;
  CHECK(code_of([&] {
          direct_resolvent(dec, BoundaryRealization::neumann(2), kPi * kPi + 1e-3, f, opts);
        }) == ErrorCode::SpectralPoint);
  CHECK(code_of([&] { direct_resolvent(dec, BoundaryRealization::neumann(3), -1.0, f); }) ==
        ErrorCode::InvalidRealization);
}

TEST_CASE("essential spectrum curves") {
  const Coefficients seg{poly({0.0}), poly({0.0}), poly({0.0, 1.0})};
  const EssSpecCurve s = ess_spectrum_curve(seg, 512);
  REQUIRE(s.samples.size() == 512);
  CHECK(s.samples.front() == Complex(0.0));
  CHECK(s.samples.back() == Complex(1.0));
  for (Complex z : s.samples) CHECK(z.imag() == 0.0);

  const Coefficients circ{poly({0.0}), poly({0.0}),
                          SmoothFunction::trig({{TrigTerm::Kind::Exp, 1.0, 2 * kPi, 0.0}})};
  for (Complex z : ess_spectrum_curve(circ).samples) CHECK(std::abs(std::abs(z) - 1.0) < 1e-14);

  const Coefficients g = generic();
  const EssSpecCurve gc = ess_spectrum_curve(g, 600);
  for (std::size_t k = 0; k < gc.samples.size(); k += 50) {
    const double x = static_cast<double>(k) / 599.0;
    // Symbol determinant xi^2 (a b + c - lambda) at xi = 1, lambda = sample.
    const Complex symbol = g.a.value(x) * g.b.value(x) + g.c.value(x) - gc.samples[k];
    CHECK(std::abs(symbol) < 1e-14);
  }
  CHECK(code_of([&] { ess_spectrum_curve(g, 100); }) == ErrorCode::InvalidArgument);

  CHECK(distance_to_curve(s, Complex(0.5, 0.3)) == doctest::Approx(0.3));
  CHECK(distance_to_curve(s, Complex(-0.4, 0.3)) == doctest::Approx(0.5));
  EssSpecCurve shifted = s;
  for (Complex& z : shifted.samples) z += Complex(0.0, 0.5);
  CHECK(hausdorff_distance(s, shifted) == doctest::Approx(0.5));
  CHECK(hausdorff_distance(s, s) == 0.0);

  const ExclusionTube tube(seg, 0.05);
  CHECK(tube.contains(Complex(0.5, 0.04)));
  CHECK_FALSE(tube.contains(Complex(0.5, 0.06)));
}

TEST_CASE("twin_counterexample") {
  const Coefficients base = twin_base();
  const TwinPair same = twin_counterexample(base, 0.4, 0.6, 0.0);
  for (double x : {0.1, 0.45, 0.5, 0.9}) CHECK(same.twin.c.value(x) == base.c.value(x));

  const TwinPair tw = twin_counterexample(base, 0.4, 0.6, 1.0);
  double peak = 0.0;
  for (int k = 0; k <= 1000; ++k) {
    const double x = k / 1000.0;
    const double diff = std::abs(tw.twin.c.value(x) - base.c.value(x));
    if (x <= 0.4 || x >= 0.6) CHECK(diff == 0.0);
    peak = std::max(peak, diff);
    CHECK(tw.twin.a.value(x) == base.a.value(x));
    CHECK(tw.twin.b.value(x) == base.b.value(x));
  }
  CHECK(std::abs(peak - std::exp(-1.0)) < 1e-12);

  // b / (lambda - c) agrees pointwise for lambda away from both curves.
  ExclusionTube tube(tw.base, 0.05);
  tube.add(tw.twin);
  std::mt19937_64 rng(5);
  int tested = 0;
  while (tested < 20) {
    const Complex lambda = testing::random_complex(rng, 3.0);
    if (tube.contains(lambda)) continue;
    ++tested;
    for (int k = 0; k <= 256; ++k) {
      const double x = k / 256.0;
      const Complex gb = base.b.value(x) / (lambda - tw.base.c.value(x));
      const Complex gt = base.b.value(x) / (lambda - tw.twin.c.value(x));
      CHECK(gb == gt);
    }
  }

  CHECK(code_of([&] { twin_counterexample(base, 0.7, 0.8, 1.0); }) ==
        ErrorCode::HypothesisViolated);
  CHECK(code_of([&] { twin_counterexample(base, 0.0, 0.5, 1.0); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { twin_counterexample(base, 0.5, 0.45, 1.0); }) == ErrorCode::InvalidArgument);
}
