#include <benchmark/benchmark.h>

#include <random>

#include "roecart/cartan.hpp"
#include "roecart/generate.hpp"
#include "roecart/matching.hpp"
#include "roecart/rigidity.hpp"

namespace {

using namespace roecart;

SpacePtr interval(int n) { return generate_space({.kind = "interval", .size = n}); }

Eigen::MatrixXcd random_matrix(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5; };
  Eigen::MatrixXcd m(n, n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) m(x, y) = std::complex<double>(unit(), unit());
  return m;
}

void BM_SpectralNorm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Eigen::MatrixXcd m = random_matrix(n, 11);
  for (auto _ : state) benchmark::DoNotOptimize(spectral_norm(m));
}
BENCHMARK(BM_SpectralNorm)->Arg(32)->Arg(64)->Arg(128)->Arg(256);

void BM_HallMatching(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SpacePtr space = interval(n);
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) adj[static_cast<std::size_t>(x)] = space->ball(x, 3.0);
  const BipartiteGraph g(n, n, adj);
  for (auto _ : state) benchmark::DoNotOptimize(hall_matching(g));
}
BENCHMARK(BM_HallMatching)->Arg(64)->Arg(256)->Arg(1024);

void BM_CoarseClosure(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SpacePtr space = interval(n);
  const Entourage gen = metric_entourage(*space, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(CoarseGenerators(space, {gen}));
}
BENCHMARK(BM_CoarseClosure)->Arg(16)->Arg(32)->Arg(64);

void BM_GeneratedAlgebra(benchmark::State& state) {
  const int blocks = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_cartan(blocks));
}
BENCHMARK(BM_GeneratedAlgebra)->Arg(4)->Arg(8)->Arg(16);

void BM_Recover(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SpacePtr space = interval(n);
  const UnitaryPlan plan{2.0, 2.0, 0.2, true};
  const Operator v = generate_unitary(plan, space, 5);
  const std::vector<double> grid = default_delta_grid();
  for (auto _ : state)
    benchmark::DoNotOptimize(recover_bijection(v, space, space, grid, nullptr));
}
BENCHMARK(BM_Recover)->Arg(32)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
