#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "roil/detector.hpp"
#include "roil/roi.hpp"

namespace roil {

// Binary stream layout (all multi-byte integers little-endian):
//
//   header  "ROIL" | version u8 | frame_width u16 | frame_height u16 |
//           gop_length u16 | scheme u8 | [detector descriptor]
//   record  frame_index u32 | flags u8 | payload_len u32 | payload
//
// The detector descriptor is present only for the reconstructed scheme:
// kind u8 (0 connected components, 1 sidecar oracle), and for connected
// components threshold u8 and min_area u32. Record flags: bit 0 intra,
// bit 1 direct fallback (reconstructed scheme only); other bits are zero.
// Payloads are byte-aligned with zero padding. Records run to end of data.

inline constexpr std::uint8_t kStreamVersion = 1;

enum class Scheme : std::uint8_t { Direct = 0, Differential = 1, Reconstructed = 2 };

std::string_view scheme_name(Scheme s);

struct StreamHeader {
  std::uint8_t version = kStreamVersion;
  std::uint16_t frame_width = 0;
  std::uint16_t frame_height = 0;
  std::uint16_t gop_length = 0;  // intra period; 0 = first frame only
  Scheme scheme = Scheme::Direct;
  std::optional<DetectorDescriptor> detector;

  friend bool operator==(const StreamHeader&, const StreamHeader&) = default;
};

struct StreamConfig {
  Scheme scheme = Scheme::Direct;
  std::uint16_t gop_length = 0;
  std::optional<Detector> detector;  // required for Scheme::Reconstructed
};

struct EncodedStream {
  std::vector<std::uint8_t> bytes;
  std::vector<std::uint64_t> payload_bits;  // unpadded bits per frame
};

/// True when the frame at `position` in a sequence must be intra.
bool is_intra_position(std::size_t position, std::uint16_t gop_length);

/// Restamps frame kinds to follow the intra cadence of `gop_length`.
void apply_gop(SequenceRois& seq, std::uint16_t gop_length);

/// The gop_length whose cadence matches the frame kinds of `seq`, if any.
/// Prefers 0 when only the first frame is intra.
std::optional<std::uint16_t> infer_gop_length(const SequenceRois& seq);

/// Encodes a validated sequence. Throws ValidationError for invalid input,
/// ContractError when frame kinds disagree with the gop cadence or geometry
/// does not fit 16 bits, and ConfigError for a reconstructed stream without
/// a detector.
EncodedStream encode_stream(const SequenceRois& seq, const StreamConfig& config);
std::vector<std::uint8_t> write_stream(const SequenceRois& seq, const StreamConfig& config);

std::vector<std::uint8_t> encode_header(const StreamHeader& header);

/// Parses the header; `header_size` receives its length in bytes.
StreamHeader read_header(std::span<const std::uint8_t> bytes,
                         std::size_t* header_size = nullptr);

/// Location of one record inside a stream, found without decoding payloads.
struct FrameRecordView {
  std::uint32_t frame_index = 0;
  std::uint8_t flags = 0;
  std::span<const std::uint8_t> payload;

  bool intra() const { return (flags & 0x01) != 0; }
  bool direct_fallback() const { return (flags & 0x02) != 0; }
};

/// Walks record boundaries using payload_len only.
std::vector<FrameRecordView> list_records(std::span<const std::uint8_t> bytes);

/// Decodes a whole stream. `detector` must be given for reconstructed
/// streams and must match the header's descriptor (ConfigError otherwise).
/// Any structural problem raises MalformedStreamError, tagged with the frame
/// index when it occurs inside a record.
SequenceRois read_stream(std::span<const std::uint8_t> bytes,
                         const Detector* detector = nullptr);

}  // namespace roil
