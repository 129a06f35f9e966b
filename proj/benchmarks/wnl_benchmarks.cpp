#include <benchmark/benchmark.h>

#include <numbers>
#include <random>

#include "wnl/bellfamily.hpp"
#include "wnl/channels.hpp"
#include "wnl/permanent.hpp"
#include "wnl/polytope.hpp"

using namespace wnl;

static void BM_PermanentRyser(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937 rng(1);
  std::vector<int> a(static_cast<std::size_t>(n * n));
  for (int& x : a) x = rng() & 1 ? 1 : -1;
  for (auto _ : state) benchmark::DoNotOptimize(permanent_pm1(a, n));
}
BENCHMARK(BM_PermanentRyser)->Arg(8)->Arg(12)->Arg(14);

static void BM_VertexSet(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int m = static_cast<int>(state.range(1));
  for (auto _ : state) {
    VertexSet vs(n, m);
    benchmark::DoNotOptimize(vs.size());
  }
}
BENCHMARK(BM_VertexSet)->Args({14, 2})->Args({9, 3})->Args({4, 5})->Unit(benchmark::kMillisecond);

static void BM_FamilyLocalBound(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(family_local_bound_enumerate(n).value);
}
BENCHMARK(BM_FamilyLocalBound)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_QuantumPoint(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const MeasurementAngles angles({0.4, 1.9, 2.6});
  for (auto _ : state) benchmark::DoNotOptimize(mixed_point(NoisyWState(n, 0.3), angles));
}
BENCHMARK(BM_QuantumPoint)->Arg(6)->Arg(14);

static void BM_PauliThreshold(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const VertexSet vs(n, 2);
  for (auto _ : state) {
    PCritSolver solver(vs);
    benchmark::DoNotOptimize(pcrit_at_angles(solver, MeasurementAngles::pauli_zx()).p_crit);
  }
}
BENCHMARK(BM_PauliThreshold)->Arg(6)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);

// Repeated solves at nearby angles, as in the angle search.
static void BM_WarmLpValue(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int m = static_cast<int>(state.range(1));
  const VertexSet vs(n, m);
  PCritSolver solver(vs);
  std::vector<double> base;
  for (int j = 0; j < m; ++j) base.push_back(std::numbers::pi * (j + 0.5) / m);
  double shift = 0;
  for (auto _ : state) {
    std::vector<double> a = base;
    for (double& x : a) x += shift;
    shift = shift > 1e-2 ? 0 : shift + 1e-3;
    const MeasurementAngles angles(a);
    benchmark::DoNotOptimize(solver.value(w_point(n, angles), product_point(n, angles)));
  }
}
BENCHMARK(BM_WarmLpValue)->Args({8, 2})->Args({5, 3})->Args({4, 4})->Unit(benchmark::kMillisecond);

static void BM_VerifyCertificate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const VertexSet vs(n, 2);
  PCritSolver solver(vs);
  const PCritCertificate cert = pcrit_at_angles(solver, MeasurementAngles::pauli_zx());
  for (auto _ : state) benchmark::DoNotOptimize(verify_certificate(cert, vs).passed);
}
BENCHMARK(BM_VerifyCertificate)->Arg(8)->Arg(14)->Unit(benchmark::kMillisecond);

static void BM_AmplitudeDamp(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Eigen::MatrixXd rho = noisy_w_density(NoisyWState(n, 0.0));
  for (auto _ : state) benchmark::DoNotOptimize(amplitude_damp(rho, 0.3));
}
BENCHMARK(BM_AmplitudeDamp)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
