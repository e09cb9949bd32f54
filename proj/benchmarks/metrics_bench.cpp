#include <benchmark/benchmark.h>

#include <random>

#include "mesh_generators.hpp"
#include "meshtok/metrics.hpp"
#include "meshtok/sampling.hpp"
#include "oracles.hpp"

namespace {

using namespace meshtok;

std::vector<Vec3> cloud(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> coord(0.0, 1.0);
  std::vector<Vec3> out(n);
  for (auto& p : out) p = {coord(gen), coord(gen), coord(gen)};
  return out;
}

void BM_ChamferKdTree(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = cloud(n, 1);
  const auto b = cloud(n, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(chamfer(a, b));
  }
}
BENCHMARK(BM_ChamferKdTree)->RangeMultiplier(4)->Range(256, 16384);

void BM_ChamferBruteForce(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = cloud(n, 1);
  const auto b = cloud(n, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(testing::brute_chamfer(a, b));
  }
}
BENCHMARK(BM_ChamferBruteForce)->RangeMultiplier(4)->Range(256, 4096);

void BM_SampleSurface(benchmark::State& state) {
  const auto mesh = testing::icosphere(5);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_surface(mesh, static_cast<std::size_t>(state.range(0)), ++seed));
  }
}
BENCHMARK(BM_SampleSurface)->Arg(1024)->Arg(100000);

void BM_EvaluatePair(benchmark::State& state) {
  const auto a = testing::icosphere(4);
  const auto b = testing::torus(1.0, 0.3, 64, 32);
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate_pair(a, b, 1024, 7));
  }
}
BENCHMARK(BM_EvaluatePair);

}  // namespace

BENCHMARK_MAIN();
