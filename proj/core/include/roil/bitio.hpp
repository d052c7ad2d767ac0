#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace roil {

/// Largest value codable with ue(): 2^32 - 1.
inline constexpr std::uint64_t kMaxUe = 0xFFFFFFFFull;
/// se() accepts |v| <= 2^31 - 1.
inline constexpr std::int64_t kMaxSeMagnitude = 0x7FFFFFFF;

/// Appends bits MSB-first into a growable byte buffer.
class BitWriter {
 public:
  void put_bit(bool bit);
  /// Writes the low `count` bits of `value`, most significant first.
  void put_bits(std::uint64_t value, unsigned count);

  std::size_t bit_length() const { return bit_length_; }
  /// Bytes written so far; the final partial byte is zero-padded.
  const std::vector<std::uint8_t>& bytes() const { return buffer_; }
  /// Moves the zero-padded buffer out and resets the writer.
  std::vector<std::uint8_t> finish();

 private:
  std::vector<std::uint8_t> buffer_;
  std::size_t bit_length_ = 0;
};

/// Reads bits MSB-first from a borrowed byte range. Every read that would
/// run past the end throws MalformedStreamError.
class BitReader {
 public:
  explicit BitReader(std::span<const std::uint8_t> data)
      : data_(data), size_bits_(data.size() * 8) {}

  bool get_bit();
  std::uint64_t get_bits(unsigned count);

  std::size_t position() const { return cursor_; }
  std::size_t bits_remaining() const { return size_bits_ - cursor_; }

  /// Throws MalformedStreamError unless the remaining bits are fewer than
  /// eight and all zero (byte-alignment padding only).
  void expect_zero_padding() const;

 private:
  std::span<const std::uint8_t> data_;
  std::size_t size_bits_;
  std::size_t cursor_ = 0;
};

// Order-0 exponential-Golomb codes. ue(v) is floor(log2(v+1)) zeros followed
// by the binary form of v+1. se(v) zigzags v onto ue: 0,1,-1,2,-2 -> 0,1,2,3,4.

void write_ue(BitWriter& w, std::uint64_t v);
void write_se(BitWriter& w, std::int64_t v);
void write_flag(BitWriter& w, bool flag);

std::uint32_t read_ue(BitReader& r);
std::int32_t read_se(BitReader& r);
bool read_flag(BitReader& r);

/// Length in bits of ue(v): 2*floor(log2(v+1)) + 1.
unsigned ue_bits(std::uint64_t v);
unsigned se_bits(std::int64_t v);

/// Zigzag mapping used by se(): v > 0 -> 2v-1, v <= 0 -> -2v.
std::uint64_t se_to_ue(std::int64_t v);
std::int64_t ue_to_se(std::uint64_t u);

}  // namespace roil
