#include "roil/scheme_differential.hpp"

#include <algorithm>
#include <string>

#include "roil/errors.hpp"
#include "roil/scheme_direct.hpp"

namespace roil {
namespace {

void flush_run(BitWriter& w, const std::vector<bool>& flags) {
  write_ue(w, flags.size());
  for (bool f : flags) write_flag(w, f);
}

// Number of leading ROIs whose labels were already allocated.
std::size_t old_prefix_length(std::span<const Roi> rois, std::uint64_t max_label) {
  return static_cast<std::size_t>(
      std::find_if(rois.begin(), rois.end(),
                   [&](const Roi& r) { return r.label > max_label; }) -
      rois.begin());
}

}  // namespace

TemporalState TemporalState::advanced(std::span<const Roi> rois) const {
  TemporalState next;
  next.previous.assign(rois.begin(), rois.end());
  next.max_label_ever = max_label_ever;
  for (const Roi& r : rois) next.max_label_ever = std::max(next.max_label_ever, r.label);
  return next;
}

TemporalState encode_differential(const FrameRois& frame,
                                  const TemporalState& state, BitWriter& w) {
  const std::span<const Roi> cur = frame.rois;
  if (frame.kind == FrameKind::Intra) {
    encode_direct(cur, w);
    return state.advanced(cur);
  }
  if (cur.size() > kMaxRoisPerFrame) throw ContractError("too many rois in frame");
  if (!labels_strictly_increasing(cur)) {
    throw ContractError("differential: labels must be >= 1 and strictly increasing");
  }

  const std::size_t old_count = old_prefix_length(cur, state.max_label_ever);
  std::uint64_t expected_new = state.max_label_ever + 1;
  for (std::size_t i = old_count; i < cur.size(); ++i, ++expected_new) {
    if (cur[i].label != expected_new) {
      throw ContractError("differential: new label " + std::to_string(cur[i].label) +
                          " is not consecutive (expected " +
                          std::to_string(expected_new) + ")");
    }
  }

  write_ue(w, cur.size());

  std::vector<bool> flags;
  std::size_t j = 0;  // next unmatched old ROI of the current frame
  for (const Roi& prev : state.previous) {
    if (j >= old_count || cur[j].label > prev.label) {
      flags.push_back(false);  // prev vanished
      continue;
    }
    if (cur[j].label < prev.label) {
      throw ContractError("differential: label " + std::to_string(cur[j].label) +
                          " is not present in the previous frame");
    }
    const RoiDelta d = diff(cur[j], prev);
    ++j;
    if (d.is_zero()) {
      flags.push_back(true);
      continue;
    }
    flush_run(w, flags);
    flags.clear();
    write_se(w, d.dx);
    write_se(w, d.dy);
    write_se(w, d.dw);
    write_se(w, d.dh);
  }
  if (j != old_count) {
    throw ContractError("differential: label " + std::to_string(cur[j].label) +
                        " is not present in the previous frame");
  }
  flush_run(w, flags);

  for (std::size_t i = old_count; i < cur.size(); ++i) {
    if (i != old_count) write_ue(w, cur[i].label - cur[i - 1].label);
    write_ue(w, cur[i].x);
    write_ue(w, cur[i].y);
    write_ue(w, cur[i].w);
    write_ue(w, cur[i].h);
  }
  return state.advanced(cur);
}

DifferentialDecoded decode_differential(BitReader& r, FrameKind kind,
                                        const TemporalState& state) {
  if (kind == FrameKind::Intra) {
    auto rois = decode_direct(r);
    auto next = state.advanced(rois);
    return {std::move(rois), std::move(next)};
  }

  const std::uint32_t n = read_ue(r);
  if (n > kMaxRoisPerFrame) throw MalformedStreamError("roi count exceeds limit");

  std::vector<Roi> rois;
  rois.reserve(n);
  const auto& prev = state.previous;
  std::size_t next_prev = 0;
  while (true) {
    const std::uint32_t skip = read_ue(r);
    if (skip > prev.size() - next_prev) {
      throw MalformedStreamError("skip run of " + std::to_string(skip) + " exceeds " +
                                 std::to_string(prev.size() - next_prev) +
                                 " remaining references");
    }
    for (std::uint32_t k = 0; k < skip; ++k, ++next_prev) {
      if (read_flag(r)) {
        if (rois.size() == n) throw MalformedStreamError("more kept rois than n");
        rois.push_back(prev[next_prev]);
      }
    }
    if (next_prev == prev.size()) break;
    if (rois.size() == n) throw MalformedStreamError("more kept rois than n");
    RoiDelta d;
    d.dx = read_se(r);
    d.dy = read_se(r);
    d.dw = read_se(r);
    d.dh = read_se(r);
    rois.push_back(apply_delta(prev[next_prev++], d));
  }

  const std::size_t kept = rois.size();
  std::uint64_t label = state.max_label_ever;
  for (std::size_t i = kept; i < n; ++i) {
    std::uint64_t step = 1;
    if (i != kept) {
      step = read_ue(r);
      if (step == 0) throw MalformedStreamError("non-increasing appeared label");
    }
    label += step;
    Roi roi{label, read_ue(r), read_ue(r), read_ue(r), read_ue(r)};
    if (roi.w == 0 || roi.h == 0) throw MalformedStreamError("zero-area roi");
    rois.push_back(roi);
  }
  auto next = state.advanced(rois);
  return {std::move(rois), std::move(next)};
}

}  // namespace roil
