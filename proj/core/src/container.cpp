#include "roil/container.hpp"

#include <algorithm>
#include <string>

#include "roil/errors.hpp"
#include "roil/scheme_differential.hpp"
#include "roil/scheme_direct.hpp"
#include "roil/scheme_reconstructed.hpp"

namespace roil {
namespace {

constexpr std::uint8_t kMagic[4] = {'R', 'O', 'I', 'L'};
constexpr std::uint8_t kFlagIntra = 0x01;
constexpr std::uint8_t kFlagFallback = 0x02;
constexpr std::size_t kRecordHeaderSize = 9;

constexpr std::uint8_t kDetectorComponents = 0;
constexpr std::uint8_t kDetectorSidecar = 1;

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

// Bounds-checked little-endian cursor over the stream bytes.
class ByteCursor {
 public:
  explicit ByteCursor(std::span<const std::uint8_t> data) : data_(data) {}

  std::uint8_t u8() { return take(1)[0]; }
  std::uint16_t u16() {
    auto b = take(2);
    return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
  }
  std::uint32_t u32() {
    auto b = take(4);
    return std::uint32_t{b[0]} | (std::uint32_t{b[1]} << 8) |
           (std::uint32_t{b[2]} << 16) | (std::uint32_t{b[3]} << 24);
  }
  std::span<const std::uint8_t> take(std::size_t n) {
    if (n > remaining()) throw MalformedStreamError("unexpected end of stream");
    auto s = data_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  std::size_t remaining() const { return data_.size() - pos_; }
  std::size_t position() const { return pos_; }

 private:
  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

std::uint8_t record_flags(Scheme scheme, FrameKind kind, bool fallback) {
  std::uint8_t flags = kind == FrameKind::Intra ? kFlagIntra : 0;
  if (scheme == Scheme::Reconstructed && fallback) flags |= kFlagFallback;
  return flags;
}

}  // namespace

std::string_view scheme_name(Scheme s) {
  switch (s) {
    case Scheme::Direct: return "direct";
    case Scheme::Differential: return "differential";
    case Scheme::Reconstructed: return "reconstructed";
  }
  return "unknown";
}

bool is_intra_position(std::size_t position, std::uint16_t gop_length) {
  if (position == 0) return true;
  return gop_length != 0 && position % gop_length == 0;
}

void apply_gop(SequenceRois& seq, std::uint16_t gop_length) {
  for (std::size_t i = 0; i < seq.frames.size(); ++i) {
    seq.frames[i].kind = is_intra_position(i, gop_length) ? FrameKind::Intra : FrameKind::Inter;
  }
}

std::optional<std::uint16_t> infer_gop_length(const SequenceRois& seq) {
  if (seq.frames.empty()) return std::uint16_t{0};
  if (seq.frames.front().kind != FrameKind::Intra) return std::nullopt;
  std::size_t second = 0;
  for (std::size_t i = 1; i < seq.frames.size(); ++i) {
    if (seq.frames[i].kind == FrameKind::Intra) {
      second = i;
      break;
    }
  }
  if (second > 0xFFFF) return std::nullopt;
  const auto gop = static_cast<std::uint16_t>(second);
  for (std::size_t i = 0; i < seq.frames.size(); ++i) {
    if ((seq.frames[i].kind == FrameKind::Intra) != is_intra_position(i, gop)) {
      return std::nullopt;
    }
  }
  return gop;
}

std::vector<std::uint8_t> encode_header(const StreamHeader& header) {
  std::vector<std::uint8_t> out(std::begin(kMagic), std::end(kMagic));
  out.push_back(header.version);
  put_u16(out, header.frame_width);
  put_u16(out, header.frame_height);
  put_u16(out, header.gop_length);
  out.push_back(static_cast<std::uint8_t>(header.scheme));
  if (header.scheme == Scheme::Reconstructed) {
    if (!header.detector) throw ConfigError("reconstructed stream needs a detector descriptor");
    if (const auto* cc = std::get_if<ConnectedComponentsConfig>(&*header.detector)) {
      out.push_back(kDetectorComponents);
      out.push_back(cc->threshold);
      put_u32(out, cc->min_area);
    } else {
      out.push_back(kDetectorSidecar);
    }
  }
  return out;
}

StreamHeader read_header(std::span<const std::uint8_t> bytes, std::size_t* header_size) {
  ByteCursor in(bytes);
  auto magic = in.take(4);
  if (!std::equal(magic.begin(), magic.end(), std::begin(kMagic))) {
    throw MalformedStreamError("bad magic");
  }
  StreamHeader h;
  h.version = in.u8();
  if (h.version != kStreamVersion) {
    throw MalformedStreamError("unsupported version " + std::to_string(h.version));
  }
  h.frame_width = in.u16();
  h.frame_height = in.u16();
  if (h.frame_width == 0 || h.frame_height == 0) throw MalformedStreamError("zero frame size");
  h.gop_length = in.u16();
  const std::uint8_t scheme = in.u8();
  if (scheme > 2) throw MalformedStreamError("unknown scheme " + std::to_string(scheme));
  h.scheme = static_cast<Scheme>(scheme);
  if (h.scheme == Scheme::Reconstructed) {
    const std::uint8_t kind = in.u8();
    if (kind == kDetectorComponents) {
      ConnectedComponentsConfig cc;
      cc.threshold = in.u8();
      cc.min_area = in.u32();
      if (cc.min_area == 0) throw MalformedStreamError("detector min_area is zero");
      h.detector = cc;
    } else if (kind == kDetectorSidecar) {
      h.detector = SidecarOracleConfig{};
    } else {
      throw MalformedStreamError("unknown detector kind " + std::to_string(kind));
    }
  }
  if (header_size) *header_size = in.position();
  return h;
}

EncodedStream encode_stream(const SequenceRois& seq, const StreamConfig& config) {
  if (auto violations = validate_sequence(seq); !violations.empty()) {
    throw ValidationError(std::move(violations));
  }
  if (seq.frame_width > 0xFFFF || seq.frame_height > 0xFFFF) {
    throw ContractError("frame geometry does not fit the 16-bit header fields");
  }
  if (config.scheme == Scheme::Reconstructed && !config.detector) {
    throw ConfigError("reconstructed scheme requires a detector");
  }
  for (std::size_t i = 0; i < seq.frames.size(); ++i) {
    const bool intra = seq.frames[i].kind == FrameKind::Intra;
    if (intra != is_intra_position(i, config.gop_length)) {
      throw ContractError("frame " + std::to_string(seq.frames[i].frame_index) +
                          " kind disagrees with gop_length " +
                          std::to_string(config.gop_length));
    }
  }

  StreamHeader header;
  header.frame_width = static_cast<std::uint16_t>(seq.frame_width);
  header.frame_height = static_cast<std::uint16_t>(seq.frame_height);
  header.gop_length = config.gop_length;
  header.scheme = config.scheme;
  if (config.scheme == Scheme::Reconstructed) header.detector = config.detector->descriptor();

  EncodedStream out;
  out.bytes = encode_header(header);
  out.payload_bits.reserve(seq.frames.size());

  TemporalState state;
  for (const FrameRois& frame : seq.frames) {
    BitWriter w;
    bool fallback = false;
    switch (config.scheme) {
      case Scheme::Direct:
        encode_direct(frame.rois, w);
        break;
      case Scheme::Differential:
        state = encode_differential(frame, state, w);
        break;
      case Scheme::Reconstructed: {
        auto predicted = config.detector->predict(frame.frame_index);
        fallback = uses_direct_fallback(frame.kind, predicted);
        state = encode_reconstructed(frame, std::move(predicted), state, w);
        break;
      }
    }
    out.payload_bits.push_back(w.bit_length());
    const auto payload = w.finish();
    put_u32(out.bytes, frame.frame_index);
    out.bytes.push_back(record_flags(config.scheme, frame.kind, fallback));
    put_u32(out.bytes, static_cast<std::uint32_t>(payload.size()));
    out.bytes.insert(out.bytes.end(), payload.begin(), payload.end());
  }
  return out;
}

std::vector<std::uint8_t> write_stream(const SequenceRois& seq, const StreamConfig& config) {
  return encode_stream(seq, config).bytes;
}

std::vector<FrameRecordView> list_records(std::span<const std::uint8_t> bytes) {
  std::size_t header_size = 0;
  read_header(bytes, &header_size);
  ByteCursor in(bytes.subspan(header_size));
  std::vector<FrameRecordView> records;
  while (in.remaining() > 0) {
    if (in.remaining() < kRecordHeaderSize) {
      throw MalformedStreamError("truncated record header");
    }
    FrameRecordView rec;
    rec.frame_index = in.u32();
    rec.flags = in.u8();
    const std::uint32_t len = in.u32();
    if (len > in.remaining()) {
      throw MalformedStreamError("payload_len " + std::to_string(len) + " overruns stream",
                                 rec.frame_index);
    }
    rec.payload = in.take(len);
    records.push_back(rec);
  }
  return records;
}

SequenceRois read_stream(std::span<const std::uint8_t> bytes, const Detector* detector) {
  const StreamHeader header = read_header(bytes);
  if (header.scheme == Scheme::Reconstructed) {
    if (detector == nullptr) throw ConfigError("reconstructed stream needs a detector to decode");
    if (detector->descriptor() != *header.detector) {
      throw ConfigError("detector does not match the stream header");
    }
  }
  const auto records = list_records(bytes);

  SequenceRois seq;
  seq.frame_width = header.frame_width;
  seq.frame_height = header.frame_height;
  seq.frames.reserve(records.size());

  TemporalState state;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const FrameRecordView& rec = records[i];
    const std::uint32_t fi = rec.frame_index;
    try {
      if (i > 0 && fi <= seq.frames.back().frame_index) {
        throw MalformedStreamError("frame_index not increasing");
      }
      if ((rec.flags & ~(kFlagIntra | kFlagFallback)) != 0) {
        throw MalformedStreamError("reserved flag bits set");
      }
      if (header.scheme != Scheme::Reconstructed && rec.direct_fallback()) {
        throw MalformedStreamError("fallback flag outside reconstructed scheme");
      }
      if (rec.intra() != is_intra_position(i, header.gop_length)) {
        throw MalformedStreamError("intra flag disagrees with gop_length");
      }
      FrameRois frame;
      frame.frame_index = fi;
      frame.kind = rec.intra() ? FrameKind::Intra : FrameKind::Inter;

      BitReader r(rec.payload);
      switch (header.scheme) {
        case Scheme::Direct:
          frame.rois = decode_direct(r);
          break;
        case Scheme::Differential: {
          auto decoded = decode_differential(r, frame.kind, state);
          frame.rois = std::move(decoded.rois);
          state = std::move(decoded.state);
          break;
        }
        case Scheme::Reconstructed: {
          auto predicted = detector->predict(fi);
          if (uses_direct_fallback(frame.kind, predicted) != rec.direct_fallback()) {
            throw MalformedStreamError("fallback flag disagrees with predictions");
          }
          auto decoded = decode_reconstructed(r, frame.kind, std::move(predicted), state);
          frame.rois = std::move(decoded.rois);
          state = std::move(decoded.state);
          break;
        }
      }
      r.expect_zero_padding();
      if (auto v = validate_frame(frame, seq.frame_width, seq.frame_height); !v.empty()) {
        throw MalformedStreamError("decoded frame is invalid: " + v.front().rule);
      }
      seq.frames.push_back(std::move(frame));
    } catch (const MalformedStreamError& e) {
      if (e.frame_index()) throw;
      throw MalformedStreamError(e.what(), fi);
    }
  }

  if (auto v = validate_sequence(seq); !v.empty()) {
    throw MalformedStreamError("decoded sequence is invalid: " + v.front().rule,
                               v.front().frame_index);
  }
  return seq;
}

}  // namespace roil
