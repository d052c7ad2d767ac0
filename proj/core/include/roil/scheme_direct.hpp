#pragma once

#include <span>
#include <vector>

#include "roil/bitio.hpp"
#include "roil/roi.hpp"

namespace roil {

/// Self-contained coding of one frame's ROI list:
///   ue(n), then per ROI ue(d) ue(x) ue(y) ue(w) ue(h)
/// where d is label-1 for the first ROI and the label step afterwards.
/// Throws ContractError if labels are not >= 1 and strictly increasing.
void encode_direct(std::span<const Roi> rois, BitWriter& w);

/// Inverse of encode_direct(). Labels are rebuilt by cumulative sum.
std::vector<Roi> decode_direct(BitReader& r);

}  // namespace roil
