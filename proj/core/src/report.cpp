#include "roil/report.hpp"

#include <cstdio>
#include <string>

#include "roil/errors.hpp"

namespace roil {

const SchemeResult* SchemeReport::find(Scheme s) const {
  for (const auto& row : rows) {
    if (row.scheme == s) return &row;
  }
  return nullptr;
}

double SchemeReport::ratio(Scheme s) const {
  const SchemeResult* row = find(s);
  if (row == nullptr) throw ContractError("scheme not in report");
  return row->ratio_vs_direct;
}

SchemeReport benchmark(const SequenceRois& seq, const std::optional<Detector>& detector) {
  const auto gop = infer_gop_length(seq);
  if (!gop) throw ContractError("frame kinds do not follow a fixed gop cadence");

  std::uint64_t roi_count = 0;
  for (const auto& f : seq.frames) roi_count += f.rois.size();

  std::vector<Scheme> schemes{Scheme::Direct, Scheme::Differential};
  if (detector) schemes.push_back(Scheme::Reconstructed);

  SchemeReport report;
  for (Scheme scheme : schemes) {
    StreamConfig config{scheme, *gop, scheme == Scheme::Reconstructed ? detector : std::nullopt};
    const EncodedStream encoded = encode_stream(seq, config);
    const SequenceRois decoded =
        read_stream(encoded.bytes, config.detector ? &*config.detector : nullptr);
    if (decoded != seq) {
      throw RoundTripError(std::string(scheme_name(scheme)) + " round trip mismatch");
    }

    SchemeResult row;
    row.scheme = scheme;
    row.frames = seq.frames.size();
    for (auto bits : encoded.payload_bits) row.total_bits += bits;
    row.stream_bytes = encoded.bytes.size();
    if (row.frames > 0) {
      row.rois_per_frame_mean = static_cast<double>(roi_count) / static_cast<double>(row.frames);
      row.bits_per_frame = static_cast<double>(row.total_bits) / static_cast<double>(row.frames);
    }
    if (roi_count > 0) {
      row.bits_per_roi = static_cast<double>(row.total_bits) / static_cast<double>(roi_count);
    }
    report.rows.push_back(row);
  }

  const double direct_bits = static_cast<double>(report.rows.front().total_bits);
  for (auto& row : report.rows) {
    row.ratio_vs_direct = direct_bits > 0 ? static_cast<double>(row.total_bits) / direct_bits : 0.0;
  }
  return report;
}

std::string to_csv(const SchemeReport& report) {
  std::string out = kReportCsvHeader;
  out += '\n';
  char line[256];
  for (const auto& r : report.rows) {
    std::snprintf(line, sizeof line, "%s,%llu,%.4f,%llu,%.4f,%.4f,%.6f\n",
                  std::string(scheme_name(r.scheme)).c_str(),
                  static_cast<unsigned long long>(r.frames), r.rois_per_frame_mean,
                  static_cast<unsigned long long>(r.total_bits), r.bits_per_frame,
                  r.bits_per_roi, r.ratio_vs_direct);
    out += line;
  }
  return out;
}

std::string to_table(const SchemeReport& report) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-14s %8s %10s %12s %12s %10s %8s\n", "scheme", "frames",
                "rois/frm", "total_bits", "bits/frame", "bits/roi", "ratio");
  out += line;
  for (const auto& r : report.rows) {
    std::snprintf(line, sizeof line, "%-14s %8llu %10.2f %12llu %12.2f %10.2f %8.4f\n",
                  std::string(scheme_name(r.scheme)).c_str(),
                  static_cast<unsigned long long>(r.frames), r.rois_per_frame_mean,
                  static_cast<unsigned long long>(r.total_bits), r.bits_per_frame,
                  r.bits_per_roi, r.ratio_vs_direct);
    out += line;
  }
  return out;
}

}  // namespace roil
