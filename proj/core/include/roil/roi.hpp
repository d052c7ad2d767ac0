#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "roil/errors.hpp"

namespace roil {

/// Hard cap on ROIs in one frame; decoders reject larger counts.
inline constexpr std::size_t kMaxRoisPerFrame = 65535;

/// One bounding box: track label plus top-left corner and size in pixels.
/// Label 0 is reserved.
struct Roi {
  std::uint64_t label = 0;
  std::uint32_t x = 0;
  std::uint32_t y = 0;
  std::uint32_t w = 0;
  std::uint32_t h = 0;

  friend bool operator==(const Roi&, const Roi&) = default;
};

/// Signed location difference between two ROIs of the same track.
struct RoiDelta {
  std::int64_t dx = 0;
  std::int64_t dy = 0;
  std::int64_t dw = 0;
  std::int64_t dh = 0;

  bool is_zero() const { return dx == 0 && dy == 0 && dw == 0 && dh == 0; }
  RoiDelta operator-() const { return {-dx, -dy, -dw, -dh}; }

  friend bool operator==(const RoiDelta&, const RoiDelta&) = default;
};

enum class FrameKind : std::uint8_t { Intra, Inter };

struct FrameRois {
  std::uint32_t frame_index = 0;
  FrameKind kind = FrameKind::Intra;
  std::vector<Roi> rois;  // ascending label order

  friend bool operator==(const FrameRois&, const FrameRois&) = default;
};

struct SequenceRois {
  std::uint32_t frame_width = 0;
  std::uint32_t frame_height = 0;
  std::vector<FrameRois> frames;

  friend bool operator==(const SequenceRois&, const SequenceRois&) = default;
};

/// One broken rule found by validate_sequence().
struct Violation {
  std::uint32_t frame_index = 0;
  std::string rule;
  std::string detail;
};

// Rule names reported in Violation::rule.
namespace rule {
inline constexpr const char* kBadGeometry = "invalid frame geometry";
inline constexpr const char* kBadLabel = "label must be >= 1";
inline constexpr const char* kZeroArea = "zero-area roi";
inline constexpr const char* kOutOfFrame = "roi exceeds frame bounds";
inline constexpr const char* kLabelOrder = "labels not strictly increasing";
inline constexpr const char* kTooMany = "too many rois";
inline constexpr const char* kFrameOrder = "frame_index not strictly increasing";
inline constexpr const char* kFirstNotIntra = "first frame not intra";
inline constexpr const char* kContinuity = "label continuity";
inline constexpr const char* kNonConsecutive = "non-consecutive new label";
}  // namespace rule

/// Thrown when an operation requires a valid sequence and gets one with
/// violations.
class ValidationError : public ContractError {
 public:
  explicit ValidationError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

/// One line per violation: "frame <i>: <rule> (<detail>)".
std::string describe(const Violation& v);

/// Checks every structural invariant of a sequence. Returns an empty list
/// iff the sequence is encodable by all schemes.
///
/// New labels (greater than every label seen so far) must be allocated
/// consecutively in order of appearance. In an inter frame every other
/// label must also be present in the previous frame, so a track that
/// vanishes and comes back needs a fresh label. Intra frames may reuse any
/// earlier label since they are coded without reference.
std::vector<Violation> validate_sequence(const SequenceRois& seq);

/// Checks one ROI list (labels, area, ordering, count) without temporal
/// rules. Geometry containment is checked when width/height are non-zero.
std::vector<Violation> validate_frame(const FrameRois& frame,
                                      std::uint32_t frame_width = 0,
                                      std::uint32_t frame_height = 0);

/// current - reference, componentwise. Throws ContractError on label mismatch.
RoiDelta diff(const Roi& current, const Roi& reference);

/// reference + delta. Throws MalformedStreamError if the result has a
/// non-positive size, a negative corner, or does not fit 32 bits.
Roi apply_delta(const Roi& reference, const RoiDelta& delta);

/// True when labels are >= 1 and strictly increase.
bool labels_strictly_increasing(std::span<const Roi> rois);

}  // namespace roil
