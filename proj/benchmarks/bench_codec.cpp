#include <benchmark/benchmark.h>

#include "roil/container.hpp"
#include "roil/detector.hpp"
#include "roil/synth.hpp"

namespace {

roil::SequenceRois corpus(std::uint32_t lo, std::uint32_t hi) {
  roil::MotionConfig c;
  c.seed = 77;
  c.frame_count = 300;
  c.rois_per_frame = {lo, hi};
  c.gop_length = 30;
  return roil::generate(c);
}

roil::SidecarTable noisy_predictions(const roil::SequenceRois& seq) {
  roil::Xorshift64Star rng(3);
  roil::SidecarTable t(seq.frames.size());
  for (const auto& f : seq.frames) {
    for (const auto& r : f.rois) {
      auto n = [&](std::uint32_t v, std::int64_t floor) {
        return static_cast<std::uint32_t>(std::max(floor, std::int64_t{v} + rng.uniform(-2, 2)));
      };
      t[f.frame_index].push_back({n(r.x, 0), n(r.y, 0), n(r.w, 1), n(r.h, 1)});
    }
  }
  return t;
}

std::size_t roi_count(const roil::SequenceRois& seq) {
  std::size_t n = 0;
  for (const auto& f : seq.frames) n += f.rois.size();
  return n;
}

void BM_WriteUe(benchmark::State& state) {
  for (auto _ : state) {
    roil::BitWriter w;
    for (std::uint32_t v = 0; v < 4096; ++v) roil::write_ue(w, v);
    benchmark::DoNotOptimize(w.finish());
  }
  state.SetItemsProcessed(state.iterations() * 4096);
}
BENCHMARK(BM_WriteUe);

void BM_ReadUe(benchmark::State& state) {
  roil::BitWriter w;
  for (std::uint32_t v = 0; v < 4096; ++v) roil::write_ue(w, v);
  const auto bytes = w.finish();
  for (auto _ : state) {
    roil::BitReader r(bytes);
    std::uint64_t sum = 0;
    for (int i = 0; i < 4096; ++i) sum += roil::read_ue(r);
    benchmark::DoNotOptimize(sum);
  }
  state.SetItemsProcessed(state.iterations() * 4096);
}
BENCHMARK(BM_ReadUe);

void BM_Encode(benchmark::State& state) {
  const auto scheme = static_cast<roil::Scheme>(state.range(0));
  const auto seq = corpus(30, 40);
  roil::StreamConfig config{scheme, 30, std::nullopt};
  if (scheme == roil::Scheme::Reconstructed) config.detector = roil::Detector::sidecar(noisy_predictions(seq));
  for (auto _ : state) benchmark::DoNotOptimize(roil::write_stream(seq, config));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(roi_count(seq)));
  state.SetLabel(std::string(roil::scheme_name(scheme)));
}
BENCHMARK(BM_Encode)->DenseRange(0, 2);

void BM_Decode(benchmark::State& state) {
  const auto scheme = static_cast<roil::Scheme>(state.range(0));
  const auto seq = corpus(30, 40);
  roil::StreamConfig config{scheme, 30, std::nullopt};
  if (scheme == roil::Scheme::Reconstructed) config.detector = roil::Detector::sidecar(noisy_predictions(seq));
  const auto bytes = roil::write_stream(seq, config);
  const roil::Detector* det = config.detector ? &*config.detector : nullptr;
  for (auto _ : state) benchmark::DoNotOptimize(roil::read_stream(bytes, det));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(roi_count(seq)));
  state.SetLabel(std::string(roil::scheme_name(scheme)));
}
BENCHMARK(BM_Decode)->DenseRange(0, 2);

void BM_DetectComponents(benchmark::State& state) {
  const auto side = static_cast<std::uint32_t>(state.range(0));
  roil::FramePixels f{side, side, std::vector<std::uint8_t>(std::size_t{side} * side, 0)};
  roil::Xorshift64Star rng(1);
  for (int k = 0; k < 40; ++k) {
    const auto x0 = static_cast<std::uint32_t>(rng.uniform(0, side - 33));
    const auto y0 = static_cast<std::uint32_t>(rng.uniform(0, side - 33));
    for (std::uint32_t y = y0; y < y0 + 32; ++y)
      for (std::uint32_t x = x0; x < x0 + 32; ++x) f.pixels[std::size_t{y} * side + x] = 255;
  }
  for (auto _ : state) benchmark::DoNotOptimize(roil::detect_components(f, 128, 16));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(f.pixels.size()));
}
BENCHMARK(BM_DetectComponents)->Arg(256)->Arg(1024);

}  // namespace

BENCHMARK_MAIN();
