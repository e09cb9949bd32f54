#include <benchmark/benchmark.h>

#include "mesh_generators.hpp"
#include "meshtok/codec.hpp"
#include "meshtok/patches.hpp"

namespace {

using namespace meshtok;

void BM_Encode(benchmark::State& state) {
  const auto mesh = testing::to_grid(testing::icosphere(static_cast<int>(state.range(0))));
  for (auto _ : state) {
    benchmark::DoNotOptimize(encode(mesh, VocabSpec{}));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * mesh.faces.size()));
  state.counters["faces"] = static_cast<double>(mesh.faces.size());
}
BENCHMARK(BM_Encode)->DenseRange(3, 6);

void BM_Decode(benchmark::State& state) {
  const auto mesh = testing::to_grid(testing::icosphere(static_cast<int>(state.range(0))));
  const auto seq = encode(mesh, VocabSpec{});
  for (auto _ : state) {
    benchmark::DoNotOptimize(decode(seq));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * seq.size()));
}
BENCHMARK(BM_Decode)->DenseRange(3, 6);

void BM_BuildPatches(benchmark::State& state) {
  const auto mesh = testing::to_grid(testing::torus(1.0, 0.35, 256, 128));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_patches(mesh));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * mesh.faces.size()));
}
BENCHMARK(BM_BuildPatches);

void BM_BlockIndexRoundTrip(benchmark::State& state) {
  const VocabSpec spec;
  int x = 0;
  for (auto _ : state) {
    const GridPoint q{x & 511, (x >> 3) & 511, (x >> 6) & 511};
    benchmark::DoNotOptimize(block_inverse(block_index(q, spec), spec));
    ++x;
  }
}
BENCHMARK(BM_BlockIndexRoundTrip);

}  // namespace

BENCHMARK_MAIN();
