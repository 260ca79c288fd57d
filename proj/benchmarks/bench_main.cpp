// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <numbers>
#include <random>

#include "mfunclab/halfspace/symbols.hpp"
#include "mfunclab/numkit/linalg.hpp"
#include "mfunclab/odelab/backend.hpp"
#include "mfunclab/odelab/kernel.hpp"
#include "mfunclab/odelab/resolvent.hpp"
#include "mfunclab/triplet/engine.hpp"
#include "mfunclab/triplet/scan.hpp"

using namespace mfunclab;

namespace {

odelab::Coefficients generic() {
  using odelab::SmoothFunction;
  using odelab::TrigTerm;
  return {SmoothFunction::polynomial({0.5, Complex(0.3, 0.1)}),
          SmoothFunction::trig({{TrigTerm::Kind::Cos, 0.4, std::numbers::pi, 0.0},
                                {TrigTerm::Kind::Cos, Complex(0.0, 0.2), 0.0, 0.0}}),
          SmoothFunction::polynomial({Complex(2.0, 0.5), 1.0})};
}

void BM_SolveLinear(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  CMatrix a(n, n);
  for (auto& z : a.entries()) z = {g(rng), g(rng)};
  for (std::size_t i = 0; i < n; ++i) a(i, i) += Complex(double(n), 0.0);
  CVector b(n, Complex(1.0, 0.0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_linear(a, b));
}
BENCHMARK(BM_SolveLinear)->Arg(2)->Arg(4)->Arg(8);

void BM_KernelPair(benchmark::State& state) {
  const odelab::Coefficients co = generic();
  for (auto _ : state) benchmark::DoNotOptimize(odelab::kernel_pair(co, Complex(-2.0, 0.5)));
}
BENCHMARK(BM_KernelPair)->Unit(benchmark::kMicrosecond);

void BM_MFunction(benchmark::State& state) {
  const odelab::OdeBackend backend(generic());
  const auto real = triplet::BoundaryRealization::neumann(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(triplet::mfunction(backend, real, Complex(-2.0, 0.5)));
  }
}
BENCHMARK(BM_MFunction)->Unit(benchmark::kMicrosecond);

void BM_DirectResolvent(benchmark::State& state) {
  const odelab::Coefficients co = generic();
  const Grid grid(static_cast<std::size_t>(state.range(0)));
  const GridFunction f = GridFunction::sample(grid, [](double x) { return C2{x, 1.0 - x}; });
  const auto real = triplet::BoundaryRealization::neumann(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(odelab::direct_resolvent(co, real, Complex(-1.0, 0.0), f));
  }
}
BENCHMARK(BM_DirectResolvent)->Arg(1001)->Arg(4001)->Unit(benchmark::kMillisecond);

void BM_Scan(benchmark::State& state) {
  const odelab::OdeBackend backend(odelab::Coefficients::decoupled());
  const auto real = triplet::BoundaryRealization::neumann(2);
  const triplet::LambdaWindow w{-2.0, 50.0, -0.1, 0.1, 1041, 3};
  const auto pts = w.points();
  triplet::ScanOptions so;
  so.excluded = [&](Complex l) { return backend.in_tube(l); };
  so.workers = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(triplet::eig_scan(backend, real, pts, so));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(pts.size()));
}
BENCHMARK(BM_Scan)->Arg(1)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

void BM_HalfspaceSymbol(benchmark::State& state) {
  const auto p = halfspace::HalfspaceParams::scalar(1.5, std::polar(1.2, 0.3), Complex(0.0, 0.4));
  for (auto _ : state) {
    benchmark::DoNotOptimize(halfspace::dtn_symbol(p));
    benchmark::DoNotOptimize(halfspace::m_symbol(p));
  }
}
BENCHMARK(BM_HalfspaceSymbol);

}  // namespace

BENCHMARK_MAIN();
