#include <benchmark/benchmark.h>

#include "thermocrack/fusion.hpp"
#include "thermocrack/preprocess.hpp"
#include "thermocrack/synth.hpp"

namespace {

using namespace thermocrack;

const SynthSample& sample() {
  static const SynthSample s = synth_sample(7, CrackLevel::Level2, SourceKind::Fusion, {});
  return s;
}

void BM_SynthSample(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(synth_sample(++seed, CrackLevel::Level3, SourceKind::Fusion, {}));
}
BENCHMARK(BM_SynthSample);

void BM_AlphaFuse(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(alpha_fuse(sample().thermal_render, sample().visible));
}
BENCHMARK(BM_AlphaFuse);

void BM_EdgeOverlayMsx(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(edge_overlay_msx(sample().thermal_render, sample().visible, 64.0));
}
BENCHMARK(BM_EdgeOverlayMsx);

// Upscale to the 1080x1440 preprocessing target.
void BM_ResizeBilinear(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(resize_bilinear(sample().image, 1080, 1440));
}
BENCHMARK(BM_ResizeBilinear)->Unit(benchmark::kMillisecond);

void BM_MedianDenoise(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(median_denoise(sample().image));
}
BENCHMARK(BM_MedianDenoise);

void BM_UnsharpSharpen(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(unsharp_sharpen(sample().image));
}
BENCHMARK(BM_UnsharpSharpen);

}  // namespace
