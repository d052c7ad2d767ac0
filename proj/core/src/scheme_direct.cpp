#include "roil/scheme_direct.hpp"

#include "roil/errors.hpp"

namespace roil {

void encode_direct(std::span<const Roi> rois, BitWriter& w) {
  if (rois.size() > kMaxRoisPerFrame) throw ContractError("too many rois in frame");
  if (!labels_strictly_increasing(rois)) {
    throw ContractError("direct: labels must be >= 1 and strictly increasing");
  }
  write_ue(w, rois.size());
  std::uint64_t prev = 1;
  for (const Roi& r : rois) {
    write_ue(w, r.label - prev);
    write_ue(w, r.x);
    write_ue(w, r.y);
    write_ue(w, r.w);
    write_ue(w, r.h);
    prev = r.label;
  }
}

std::vector<Roi> decode_direct(BitReader& r) {
  const std::uint32_t n = read_ue(r);
  if (n > kMaxRoisPerFrame) throw MalformedStreamError("roi count exceeds limit");
  std::vector<Roi> rois;
  rois.reserve(n);
  std::uint64_t label = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    const std::uint32_t d = read_ue(r);
    if (i > 0 && d == 0) throw MalformedStreamError("non-increasing label");
    label += d;
    Roi roi{label, read_ue(r), read_ue(r), read_ue(r), read_ue(r)};
    if (roi.w == 0 || roi.h == 0) throw MalformedStreamError("zero-area roi");
    rois.push_back(roi);
  }
  return rois;
}

}  // namespace roil
