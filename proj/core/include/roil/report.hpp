#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "roil/container.hpp"
#include "roil/detector.hpp"
#include "roil/roi.hpp"

namespace roil {

/// Cost of coding one sequence with one scheme. Bits are unpadded payload
/// bits; container framing is excluded.
struct SchemeResult {
  Scheme scheme = Scheme::Direct;
  std::uint64_t frames = 0;
  double rois_per_frame_mean = 0;
  std::uint64_t total_bits = 0;
  double bits_per_frame = 0;
  double bits_per_roi = 0;
  double ratio_vs_direct = 0;
  std::uint64_t stream_bytes = 0;  // whole container, framing included
};

struct SchemeReport {
  std::vector<SchemeResult> rows;  // direct first

  const SchemeResult* find(Scheme s) const;
  /// total_bits(s) / total_bits(direct); throws if `s` was not run.
  double ratio(Scheme s) const;
};

/// Codes `seq` with direct and differential coding, and with reconstructed
/// coding when a detector is given. Every stream is decoded again and must
/// reproduce `seq` exactly; a mismatch throws RoundTripError and no report
/// is produced. The gop length is inferred from the frame kinds.
SchemeReport benchmark(const SequenceRois& seq,
                       const std::optional<Detector>& detector = std::nullopt);

inline constexpr const char* kReportCsvHeader =
    "scheme,frames,rois_per_frame_mean,total_bits,bits_per_frame,bits_per_roi,ratio_vs_direct";

std::string to_csv(const SchemeReport& report);
std::string to_table(const SchemeReport& report);

}  // namespace roil
