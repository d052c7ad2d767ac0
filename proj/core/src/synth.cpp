#include "roil/synth.hpp"

#include <algorithm>
#include <string>
#include <tuple>

#include "roil/container.hpp"
#include "roil/errors.hpp"

namespace roil {

Xorshift64Star::Xorshift64Star(std::uint64_t seed) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  z ^= z >> 31;
  state_ = z != 0 ? z : 0x9E3779B97F4A7C15ull;
}

std::uint64_t Xorshift64Star::next() {
  state_ ^= state_ >> 12;
  state_ ^= state_ << 25;
  state_ ^= state_ >> 27;
  return state_ * 0x2545F4914F6CDD1Dull;
}

std::int64_t Xorshift64Star::uniform(std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next());
  return lo + static_cast<std::int64_t>(next() % span);
}

double Xorshift64Star::unit() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

bool Xorshift64Star::chance(double p) { return unit() < p; }

void check(const MotionConfig& c) {
  auto fail = [](const std::string& what) { throw ContractError("motion config: " + what); };
  if (c.frame_width == 0 || c.frame_height == 0) fail("frame size must be positive");
  if (c.rois_per_frame.lo > c.rois_per_frame.hi) fail("rois_per_frame range inverted");
  if (c.rois_per_frame.hi > kMaxRoisPerFrame) fail("rois_per_frame above limit");
  if (c.velocity_range.lo > c.velocity_range.hi) fail("velocity_range inverted");
  if (c.size_jitter_range.lo > c.size_jitter_range.hi) fail("size_jitter_range inverted");
  if (c.roi_size.lo == 0 || c.roi_size.lo > c.roi_size.hi) fail("roi_size must be 1 <= lo <= hi");
  if (c.roi_size.lo > c.frame_width || c.roi_size.lo > c.frame_height) {
    fail("roi_size.lo does not fit the frame");
  }
  for (double p : {c.spawn_prob, c.despawn_prob, c.static_fraction}) {
    if (!(p >= 0.0 && p <= 1.0)) fail("probabilities must lie in [0, 1]");
  }
}

namespace {

struct Track {
  Roi roi;
  bool is_static = false;
};

class Generator {
 public:
  explicit Generator(const MotionConfig& c) : c_(c), rng_(c.seed) {}

  SequenceRois run() {
    SequenceRois seq;
    seq.frame_width = c_.frame_width;
    seq.frame_height = c_.frame_height;
    if (c_.frame_count == 0) return seq;
    seq.frames.reserve(c_.frame_count);

    const auto initial = rng_.uniform(c_.rois_per_frame.lo, c_.rois_per_frame.hi);
    std::vector<Track> born;
    for (std::int64_t i = 0; i < initial; ++i) born.push_back(spawn());
    std::stable_sort(born.begin(), born.end(), [](const Track& a, const Track& b) {
      return std::tie(a.roi.y, a.roi.x, a.roi.w, a.roi.h) <
             std::tie(b.roi.y, b.roi.x, b.roi.w, b.roi.h);
    });
    for (Track& t : born) t.roi.label = ++last_label_;
    tracks_ = std::move(born);
    emit(seq, 0);

    for (std::uint32_t f = 1; f < c_.frame_count; ++f) {
      step();
      emit(seq, f);
    }
    return seq;
  }

 private:
  Track spawn() {
    Track t;
    const std::uint32_t max_w = std::min(c_.roi_size.hi, c_.frame_width);
    const std::uint32_t max_h = std::min(c_.roi_size.hi, c_.frame_height);
    t.roi.w = static_cast<std::uint32_t>(rng_.uniform(c_.roi_size.lo, max_w));
    t.roi.h = static_cast<std::uint32_t>(rng_.uniform(c_.roi_size.lo, max_h));
    t.roi.x = static_cast<std::uint32_t>(rng_.uniform(0, c_.frame_width - t.roi.w));
    t.roi.y = static_cast<std::uint32_t>(rng_.uniform(0, c_.frame_height - t.roi.h));
    t.is_static = rng_.chance(c_.static_fraction);
    return t;
  }

  static std::int64_t clamp(std::int64_t v, std::int64_t lo, std::int64_t hi) {
    return std::max(lo, std::min(v, hi));
  }

  void move(Track& t) {
    const std::int64_t dx = rng_.uniform(c_.velocity_range.lo, c_.velocity_range.hi);
    const std::int64_t dy = rng_.uniform(c_.velocity_range.lo, c_.velocity_range.hi);
    const std::int64_t dw = rng_.uniform(c_.size_jitter_range.lo, c_.size_jitter_range.hi);
    const std::int64_t dh = rng_.uniform(c_.size_jitter_range.lo, c_.size_jitter_range.hi);
    Roi& r = t.roi;
    const std::int64_t max_w = std::min(c_.roi_size.hi, c_.frame_width);
    const std::int64_t max_h = std::min(c_.roi_size.hi, c_.frame_height);
    r.w = static_cast<std::uint32_t>(clamp(std::int64_t{r.w} + dw, c_.roi_size.lo, max_w));
    r.h = static_cast<std::uint32_t>(clamp(std::int64_t{r.h} + dh, c_.roi_size.lo, max_h));
    r.x = static_cast<std::uint32_t>(clamp(std::int64_t{r.x} + dx, 0, c_.frame_width - r.w));
    r.y = static_cast<std::uint32_t>(clamp(std::int64_t{r.y} + dy, 0, c_.frame_height - r.h));
  }

  void step() {
    std::vector<Track> kept;
    kept.reserve(tracks_.size() + 1);
    std::size_t alive = tracks_.size();
    for (Track& t : tracks_) {
      if (alive > c_.rois_per_frame.lo && rng_.chance(c_.despawn_prob)) {
        --alive;
        continue;
      }
      if (!t.is_static) move(t);
      kept.push_back(t);
    }
    tracks_ = std::move(kept);
    if (tracks_.size() < c_.rois_per_frame.hi && rng_.chance(c_.spawn_prob)) add_new();
    while (tracks_.size() < c_.rois_per_frame.lo) add_new();
  }

  void add_new() {
    Track t = spawn();
    t.roi.label = ++last_label_;
    tracks_.push_back(t);
  }

  void emit(SequenceRois& seq, std::uint32_t index) {
    FrameRois frame;
    frame.frame_index = index;
    frame.kind = is_intra_position(index, c_.gop_length) ? FrameKind::Intra : FrameKind::Inter;
    frame.rois.reserve(tracks_.size());
    for (const Track& t : tracks_) frame.rois.push_back(t.roi);
    seq.frames.push_back(std::move(frame));
  }

  const MotionConfig& c_;
  Xorshift64Star rng_;
  std::vector<Track> tracks_;
  std::uint64_t last_label_ = 0;
};

}  // namespace

SequenceRois generate(const MotionConfig& config) {
  check(config);
  return Generator(config).run();
}

}  // namespace roil
