#pragma once

#include <string>
#include <string_view>

#include "roil/detector.hpp"
#include "roil/roi.hpp"
#include "roil/synth.hpp"

namespace roil {

// JSON interchange used on the CLI boundary. Parsers throw ParseError on
// malformed JSON, missing fields, wrong types or out-of-range numbers; they
// do not run sequence validation.

/// {"frame_width", "frame_height", "frames": [{"frame_index",
///  "kind": "intra"|"inter", "rois": [{"label","x","y","w","h"}]}]}
SequenceRois sequence_from_json(std::string_view text);
/// Serializes with the field order above, two-space indent.
std::string sequence_to_json(const SequenceRois& seq);

/// Sidecar predictions: array indexed by frame_index of [{"x","y","w","h"}].
SidecarTable sidecar_from_json(std::string_view text);
std::string sidecar_to_json(const SidecarTable& table);

/// Generator config. Every field is optional and defaults to MotionConfig{}.
/// Ranges are two-element arrays [lo, hi]: "rois_per_frame",
/// "velocity_range", "size_jitter_range", "roi_size".
MotionConfig motion_config_from_json(std::string_view text);
std::string motion_config_to_json(const MotionConfig& config);

}  // namespace roil
