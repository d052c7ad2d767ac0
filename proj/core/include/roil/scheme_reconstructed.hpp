#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "roil/bitio.hpp"
#include "roil/roi.hpp"
#include "roil/scheme_differential.hpp"

namespace roil {

/// Anonymous box produced by a detector.
struct PredictedRoi {
  std::uint32_t x = 0;
  std::uint32_t y = 0;
  std::uint32_t w = 0;
  std::uint32_t h = 0;

  friend bool operator==(const PredictedRoi&, const PredictedRoi&) = default;
  friend auto operator<=>(const PredictedRoi&, const PredictedRoi&) = default;
};

/// Sorts predictions by (y, x, w, h) so encoder and decoder agree on indices
/// regardless of detector output order.
void canonical_order(std::vector<PredictedRoi>& predicted);

/// Actual ROIs grouped by the index of their nearest predicted ROI.
struct Assignment {
  std::vector<std::vector<Roi>> groups;  // one entry per predicted ROI
};

/// Assigns each actual ROI to the predicted ROI whose center is nearest in
/// squared Euclidean distance. Centers are compared in doubled integer
/// coordinates (2x + w, 2y + h) so the comparison is exact. Ties go to the
/// lowest predicted index; each group keeps label order.
/// Throws ContractError if `predicted` is empty.
Assignment assign(std::span<const Roi> actual, std::span<const PredictedRoi> predicted);

/// True when the frame is coded with the direct fallback instead of the
/// prediction payload: intra frames and frames with no predictions.
bool uses_direct_fallback(FrameKind kind, std::span<const PredictedRoi> predicted);

/// Codes a frame relative to detector predictions (experimental; not part of
/// any standard profile).
///
/// Layout: ue(n); for each predicted ROI in canonical order, ue(group size)
/// followed by each assigned ROI as a label code and four se() offsets from
/// the predicted box. Label codes chain over the whole emission order: the
/// first is ue(label - 1), each later one is se(label - previous label).
///
/// `predicted` need not be sorted. Falls back to encode_direct() when
/// uses_direct_fallback() holds. The returned state tracks the coded frame
/// the same way the differential scheme does.
TemporalState encode_reconstructed(const FrameRois& frame,
                                   std::vector<PredictedRoi> predicted,
                                   const TemporalState& state, BitWriter& w);

struct ReconstructedDecoded {
  std::vector<Roi> rois;  // sorted by label
  TemporalState state;
};

ReconstructedDecoded decode_reconstructed(BitReader& r, FrameKind kind,
                                          std::vector<PredictedRoi> predicted,
                                          const TemporalState& state);

}  // namespace roil
