#include "roil/roi.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <utility>

#include "roil/errors.hpp"

namespace roil {
namespace {

void add(std::vector<Violation>& out, std::uint32_t frame, const char* rule,
         std::string detail) {
  out.push_back({frame, rule, std::move(detail)});
}

std::string label_str(std::uint64_t label) {
  return "label " + std::to_string(label);
}

}  // namespace

std::string describe(const Violation& v) {
  std::string s = "frame " + std::to_string(v.frame_index) + ": " + v.rule;
  if (!v.detail.empty()) s += " (" + v.detail + ")";
  return s;
}

ValidationError::ValidationError(std::vector<Violation> violations)
    : ContractError(violations.empty()
                        ? std::string("invalid sequence")
                        : "invalid sequence: " + describe(violations.front()) +
                              (violations.size() > 1
                                   ? " and " + std::to_string(violations.size() - 1) + " more"
                                   : "")),
      violations_(std::move(violations)) {}

bool labels_strictly_increasing(std::span<const Roi> rois) {
  std::uint64_t last = 0;
  for (const Roi& r : rois) {
    if (r.label <= last) return false;
    last = r.label;
  }
  return true;
}

std::vector<Violation> validate_frame(const FrameRois& frame,
                                      std::uint32_t frame_width,
                                      std::uint32_t frame_height) {
  std::vector<Violation> out;
  const std::uint32_t fi = frame.frame_index;
  if (frame.rois.size() > kMaxRoisPerFrame) {
    add(out, fi, rule::kTooMany, std::to_string(frame.rois.size()));
  }
  const bool check_bounds = frame_width > 0 && frame_height > 0;
  std::uint64_t last = 0;
  for (const Roi& r : frame.rois) {
    if (r.label == 0) add(out, fi, rule::kBadLabel, label_str(r.label));
    if (r.w == 0 || r.h == 0) add(out, fi, rule::kZeroArea, label_str(r.label));
    if (check_bounds &&
        (std::uint64_t{r.x} + r.w > frame_width ||
         std::uint64_t{r.y} + r.h > frame_height)) {
      add(out, fi, rule::kOutOfFrame, label_str(r.label));
    }
    if (r.label != 0 && r.label <= last) {
      add(out, fi, rule::kLabelOrder,
          label_str(r.label) + " after " + std::to_string(last));
    }
    last = std::max(last, r.label);
  }
  return out;
}

std::vector<Violation> validate_sequence(const SequenceRois& seq) {
  std::vector<Violation> out;
  if (seq.frame_width == 0 || seq.frame_height == 0) {
    add(out, 0, rule::kBadGeometry,
        std::to_string(seq.frame_width) + "x" + std::to_string(seq.frame_height));
  }

  std::uint64_t max_label = 0;
  const FrameRois* prev = nullptr;
  for (const FrameRois& frame : seq.frames) {
    const std::uint32_t fi = frame.frame_index;
    auto local = validate_frame(frame, seq.frame_width, seq.frame_height);
    out.insert(out.end(), local.begin(), local.end());

    if (prev == nullptr) {
      if (frame.kind != FrameKind::Intra) add(out, fi, rule::kFirstNotIntra, "");
    } else if (frame.frame_index <= prev->frame_index) {
      add(out, fi, rule::kFrameOrder,
          "after " + std::to_string(prev->frame_index));
    }

    std::uint64_t next_new = max_label + 1;
    for (const Roi& r : frame.rois) {
      if (r.label == 0) continue;
      if (r.label > max_label) {
        if (r.label != next_new) {
          add(out, fi, rule::kNonConsecutive,
              label_str(r.label) + ", expected " + std::to_string(next_new));
        }
        next_new = r.label + 1;
      } else if (frame.kind == FrameKind::Inter && prev != nullptr) {
        const bool present = std::binary_search(
            prev->rois.begin(), prev->rois.end(), r,
            [](const Roi& a, const Roi& b) { return a.label < b.label; });
        if (!present) {
          add(out, fi, rule::kContinuity,
              label_str(r.label) + " not in previous frame");
        }
      }
    }
    for (const Roi& r : frame.rois) max_label = std::max(max_label, r.label);
    prev = &frame;
  }
  return out;
}

RoiDelta diff(const Roi& current, const Roi& reference) {
  if (current.label != reference.label) {
    throw ContractError("diff: label mismatch (" + std::to_string(current.label) +
                        " vs " + std::to_string(reference.label) + ")");
  }
  auto d = [](std::uint32_t a, std::uint32_t b) {
    return std::int64_t{a} - std::int64_t{b};
  };
  return {d(current.x, reference.x), d(current.y, reference.y),
          d(current.w, reference.w), d(current.h, reference.h)};
}

Roi apply_delta(const Roi& reference, const RoiDelta& delta) {
  constexpr std::int64_t kMax = std::numeric_limits<std::uint32_t>::max();
  const std::int64_t x = std::int64_t{reference.x} + delta.dx;
  const std::int64_t y = std::int64_t{reference.y} + delta.dy;
  const std::int64_t w = std::int64_t{reference.w} + delta.dw;
  const std::int64_t h = std::int64_t{reference.h} + delta.dh;
  if (x < 0 || y < 0) throw MalformedStreamError("delta yields negative corner");
  if (w <= 0 || h <= 0) throw MalformedStreamError("delta yields empty roi");
  if (x > kMax || y > kMax || w > kMax || h > kMax) {
    throw MalformedStreamError("delta yields out-of-range roi");
  }
  return {reference.label, static_cast<std::uint32_t>(x),
          static_cast<std::uint32_t>(y), static_cast<std::uint32_t>(w),
          static_cast<std::uint32_t>(h)};
}

}  // namespace roil
