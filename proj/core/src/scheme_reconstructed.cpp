#include "roil/scheme_reconstructed.hpp"

#include <algorithm>
#include <string>
#include <tuple>

#include "roil/errors.hpp"
#include "roil/scheme_direct.hpp"

namespace roil {
namespace {

struct Center2 {
  std::int64_t cx;
  std::int64_t cy;
};

template <typename Box>
Center2 doubled_center(const Box& b) {
  return {2 * std::int64_t{b.x} + b.w, 2 * std::int64_t{b.y} + b.h};
}

// Doubled coordinates reach 2^34, so the squared sum needs 128 bits.
__extension__ using Wide = unsigned __int128;

Wide squared_distance(Center2 a, Center2 b) {
  const std::uint64_t dx = static_cast<std::uint64_t>(a.cx > b.cx ? a.cx - b.cx : b.cx - a.cx);
  const std::uint64_t dy = static_cast<std::uint64_t>(a.cy > b.cy ? a.cy - b.cy : b.cy - a.cy);
  return Wide{dx} * dx + Wide{dy} * dy;
}

RoiDelta offset_from(const Roi& actual, const PredictedRoi& p) {
  return diff(actual, Roi{actual.label, p.x, p.y, p.w, p.h});
}

}  // namespace

void canonical_order(std::vector<PredictedRoi>& predicted) {
  std::sort(predicted.begin(), predicted.end(),
            [](const PredictedRoi& a, const PredictedRoi& b) {
              return std::tie(a.y, a.x, a.w, a.h) < std::tie(b.y, b.x, b.w, b.h);
            });
}

Assignment assign(std::span<const Roi> actual, std::span<const PredictedRoi> predicted) {
  if (predicted.empty()) throw ContractError("assign: no predicted rois");
  std::vector<Center2> centers;
  centers.reserve(predicted.size());
  for (const auto& p : predicted) centers.push_back(doubled_center(p));

  Assignment out;
  out.groups.resize(predicted.size());
  for (const Roi& a : actual) {
    const Center2 c = doubled_center(a);
    std::size_t best = 0;
    auto best_d = squared_distance(c, centers[0]);
    for (std::size_t k = 1; k < centers.size(); ++k) {
      const auto d = squared_distance(c, centers[k]);
      if (d < best_d) {
        best_d = d;
        best = k;
      }
    }
    out.groups[best].push_back(a);
  }
  return out;
}

bool uses_direct_fallback(FrameKind kind, std::span<const PredictedRoi> predicted) {
  return kind == FrameKind::Intra || predicted.empty();
}

TemporalState encode_reconstructed(const FrameRois& frame,
                                   std::vector<PredictedRoi> predicted,
                                   const TemporalState& state, BitWriter& w) {
  if (uses_direct_fallback(frame.kind, predicted)) {
    encode_direct(frame.rois, w);
    return state.advanced(frame.rois);
  }
  if (frame.rois.size() > kMaxRoisPerFrame) throw ContractError("too many rois in frame");
  if (!labels_strictly_increasing(frame.rois)) {
    throw ContractError("reconstructed: labels must be >= 1 and strictly increasing");
  }
  canonical_order(predicted);
  const Assignment assignment = assign(frame.rois, predicted);

  write_ue(w, frame.rois.size());
  bool first = true;
  std::uint64_t prev_label = 0;
  for (std::size_t k = 0; k < predicted.size(); ++k) {
    const auto& group = assignment.groups[k];
    write_ue(w, group.size());
    for (const Roi& a : group) {
      if (first) {
        write_ue(w, a.label - 1);
        first = false;
      } else {
        const auto step = static_cast<std::int64_t>(a.label - prev_label);
        if (a.label > prev_label + kMaxSeMagnitude || prev_label > a.label + kMaxSeMagnitude) {
          throw ContractError("reconstructed: label step out of range");
        }
        write_se(w, step);
      }
      prev_label = a.label;
      const RoiDelta d = offset_from(a, predicted[k]);
      write_se(w, d.dx);
      write_se(w, d.dy);
      write_se(w, d.dw);
      write_se(w, d.dh);
    }
  }
  return state.advanced(frame.rois);
}

ReconstructedDecoded decode_reconstructed(BitReader& r, FrameKind kind,
                                          std::vector<PredictedRoi> predicted,
                                          const TemporalState& state) {
  if (uses_direct_fallback(kind, predicted)) {
    auto rois = decode_direct(r);
    auto next = state.advanced(rois);
    return {std::move(rois), std::move(next)};
  }
  canonical_order(predicted);

  const std::uint32_t n = read_ue(r);
  if (n > kMaxRoisPerFrame) throw MalformedStreamError("roi count exceeds limit");
  std::vector<Roi> rois;
  rois.reserve(n);
  std::int64_t label = 0;
  for (const PredictedRoi& p : predicted) {
    const std::uint32_t count = read_ue(r);
    if (count > n - rois.size()) {
      throw MalformedStreamError("group sizes exceed roi count " + std::to_string(n));
    }
    for (std::uint32_t i = 0; i < count; ++i) {
      if (rois.empty()) {
        label = std::int64_t{read_ue(r)} + 1;
      } else {
        label += read_se(r);
      }
      if (label < 1) throw MalformedStreamError("label below 1");
      RoiDelta d;
      d.dx = read_se(r);
      d.dy = read_se(r);
      d.dw = read_se(r);
      d.dh = read_se(r);
      const Roi base{static_cast<std::uint64_t>(label), p.x, p.y, p.w, p.h};
      rois.push_back(apply_delta(base, d));
    }
  }
  if (rois.size() != n) {
    throw MalformedStreamError("group sizes sum to " + std::to_string(rois.size()) +
                               ", expected " + std::to_string(n));
  }
  std::sort(rois.begin(), rois.end(),
            [](const Roi& a, const Roi& b) { return a.label < b.label; });
  if (!labels_strictly_increasing(rois)) throw MalformedStreamError("duplicate labels");
  auto next = state.advanced(rois);
  return {std::move(rois), std::move(next)};
}

}  // namespace roil
