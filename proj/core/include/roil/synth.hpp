#pragma once

#include <cstdint>

#include "roil/roi.hpp"

namespace roil {

/// xorshift64* generator (Vigna 2014): shifts 12/25/27, output multiplier
/// 0x2545F4914F6CDD1D. The state is seeded with one splitmix64 step of the
/// user seed (increment 0x9E3779B97F4A7C15, finalizer multipliers
/// 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB) and forced non-zero.
/// Distribution helpers below are part of the reproducibility contract.
class Xorshift64Star {
 public:
  explicit Xorshift64Star(std::uint64_t seed);

  std::uint64_t next();
  /// Uniform integer in [lo, hi] as lo + next() % (hi - lo + 1).
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  /// Uniform double in [0, 1) from the top 53 bits.
  double unit();
  /// unit() < p
  bool chance(double p);

 private:
  std::uint64_t state_;
};

template <typename T>
struct InclusiveRange {
  T lo{};
  T hi{};

  friend bool operator==(const InclusiveRange&, const InclusiveRange&) = default;
};

/// Parameters of the synthetic trajectory generator.
struct MotionConfig {
  std::uint64_t seed = 1;
  std::uint32_t frame_count = 100;
  std::uint32_t frame_width = 720;
  std::uint32_t frame_height = 576;
  InclusiveRange<std::uint32_t> rois_per_frame{2, 8};
  InclusiveRange<std::int32_t> velocity_range{-3, 3};     // px/frame per axis
  InclusiveRange<std::int32_t> size_jitter_range{-1, 1};  // px/frame per side length
  double spawn_prob = 0.02;
  double despawn_prob = 0.02;
  double static_fraction = 0.3;
  InclusiveRange<std::uint32_t> roi_size{16, 96};  // initial w and h
  std::uint16_t gop_length = 0;

  friend bool operator==(const MotionConfig&, const MotionConfig&) = default;
};

/// Throws ContractError for ill-ordered ranges, probabilities outside [0,1],
/// or boxes that cannot fit the frame.
void check(const MotionConfig& config);

/// Deterministic synthetic ROI sequence.
///
/// Frame 0 starts with a uniform count from rois_per_frame; its boxes are
/// labelled in raster order of their corners (simultaneous appearances are
/// ordered top-to-bottom, left-to-right). Each later frame:
///   1. each ROI in label order despawns with despawn_prob while the count
///      stays at or above the range minimum;
///   2. each non-static survivor draws a step in velocity_range per axis and
///      a size change in size_jitter_range per side, clamped to the frame
///      and to roi_size;
///   3. one ROI spawns with spawn_prob below the range maximum, then ROIs
///      spawn until the minimum is met.
/// New ROIs get the next unused label. Frame kinds follow gop_length.
SequenceRois generate(const MotionConfig& config);

}  // namespace roil
