#include <benchmark/benchmark.h>

#include <random>

#include "salaffect/features.hpp"
#include "salaffect/synth.hpp"

namespace {

salaffect::BinaryMask random_mask(std::size_t side, double density) {
  std::mt19937_64 rng(42);
  salaffect::BinaryMask mask(side, side);
  for (std::size_t i = 0; i < side * side; ++i) mask.set(i % side, i / side, (rng() >> 11) * 0x1.0p-53 < density);
  return mask;
}

void BM_LabelRegions(benchmark::State& state) {
  const auto mask = random_mask(static_cast<std::size_t>(state.range(0)), 0.45);
  const auto conn = state.range(1) == 4 ? salaffect::Connectivity::Four : salaffect::Connectivity::Eight;
  for (auto _ : state) benchmark::DoNotOptimize(salaffect::label_regions(mask, conn));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_LabelRegions)->ArgsProduct({{64, 256, 1024}, {4, 8}});

void BM_ExtractFrameFeatures(benchmark::State& state) {
  std::uint64_t rng = 7;
  const auto map = salaffect::render_synth_frame(static_cast<std::size_t>(state.range(0)),
                                                 static_cast<std::size_t>(state.range(0)), 3, rng);
  const salaffect::FeatureConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(salaffect::extract_frame_features(map, cfg, 0, 0.0));
}
BENCHMARK(BM_ExtractFrameFeatures)->Arg(64)->Arg(256)->Arg(720);

}  // namespace
