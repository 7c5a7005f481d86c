#include <benchmark/benchmark.h>

#include <random>

#include "salaffect/saliency.hpp"

namespace {

salaffect::GrayImage noise_image(std::size_t w, std::size_t h) {
  std::mt19937_64 rng(3);
  std::vector<double> lum(w * h);
  for (auto& v : lum) v = (rng() >> 11) * 0x1.0p-53;
  return salaffect::GrayImage(w, h, std::move(lum));
}

void BM_SpectralResidual(benchmark::State& state) {
  const auto w = static_cast<std::size_t>(state.range(0));
  const auto h = static_cast<std::size_t>(state.range(1));
  const auto image = noise_image(w, h);
  for (auto _ : state) benchmark::DoNotOptimize(salaffect::spectral_residual_saliency(image));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(1));
}
BENCHMARK(BM_SpectralResidual)->Args({64, 64})->Args({128, 128})->Args({160, 90})->Args({320, 180});

void BM_GaussianBlur(benchmark::State& state) {
  const auto image = noise_image(256, 256);
  salaffect::Plane plane{256, 256, {image.luminance().begin(), image.luminance().end()}};
  const double sigma = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(salaffect::gaussian_blur(plane, sigma));
}
BENCHMARK(BM_GaussianBlur)->Arg(1)->Arg(3)->Arg(8);

}  // namespace
