#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "roil/bitio.hpp"
#include "roil/roi.hpp"

namespace roil {

/// Reference carried from one coded frame to the next. Encoder and decoder
/// hold identical copies after every frame.
struct TemporalState {
  std::vector<Roi> previous;        // ROIs of the last coded frame
  std::uint64_t max_label_ever = 0;  // highest label allocated so far

  /// State after coding `rois` as the current frame.
  TemporalState advanced(std::span<const Roi> rois) const;

  friend bool operator==(const TemporalState&, const TemporalState&) = default;
};

using DiffEncoderState = TemporalState;
using DiffDecoderState = TemporalState;

/// Temporal differential coding of one frame against `state`.
///
/// Intra frames are coded exactly as encode_direct(). Inter frames carry
/// ue(n), then a walk over the previous frame's ROIs: unchanged ROIs become
/// flag 1, vanished ROIs flag 0, and each moved ROI flushes
///   ue(run length) <run flags> se(dx) se(dy) se(dw) se(dh).
/// A final ue(run length) <run flags> closes the walk unconditionally. ROIs
/// with labels above state.max_label_ever follow as the appeared tail: the
/// first as ue(x) ue(y) ue(w) ue(h) with implied label max_label_ever + 1,
/// the rest with a leading ue(label step).
///
/// Throws ContractError when the frame does not follow from `state` (a label
/// at or below max_label_ever missing from the previous frame, or new labels
/// not allocated consecutively).
TemporalState encode_differential(const FrameRois& frame,
                                  const TemporalState& state, BitWriter& w);

struct DifferentialDecoded {
  std::vector<Roi> rois;
  TemporalState state;
};

DifferentialDecoded decode_differential(BitReader& r, FrameKind kind,
                                        const TemporalState& state);

}  // namespace roil
