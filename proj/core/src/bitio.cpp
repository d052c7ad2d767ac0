#include "roil/bitio.hpp"

#include <bit>
#include <utility>
#include <string>

#include "roil/errors.hpp"

namespace roil {

void BitWriter::put_bit(bool bit) {
  const std::size_t offset = bit_length_ & 7u;
  if (offset == 0) buffer_.push_back(0);
  if (bit) buffer_.back() |= static_cast<std::uint8_t>(0x80u >> offset);
  ++bit_length_;
}

void BitWriter::put_bits(std::uint64_t value, unsigned count) {
  for (unsigned i = count; i-- > 0;) put_bit(((value >> i) & 1u) != 0);
}

std::vector<std::uint8_t> BitWriter::finish() {
  bit_length_ = 0;
  return std::exchange(buffer_, {});
}

bool BitReader::get_bit() {
  if (cursor_ >= size_bits_) throw MalformedStreamError("bitstream exhausted");
  const std::uint8_t byte = data_[cursor_ >> 3];
  const bool bit = ((byte >> (7u - (cursor_ & 7u))) & 1u) != 0;
  ++cursor_;
  return bit;
}

std::uint64_t BitReader::get_bits(unsigned count) {
  if (count > bits_remaining()) throw MalformedStreamError("bitstream exhausted");
  std::uint64_t v = 0;
  for (unsigned i = 0; i < count; ++i) v = (v << 1) | (get_bit() ? 1u : 0u);
  return v;
}

void BitReader::expect_zero_padding() const {
  const std::size_t left = bits_remaining();
  if (left >= 8) {
    throw MalformedStreamError(std::to_string(left) + " trailing bits after payload");
  }
  for (std::size_t pos = cursor_; pos < size_bits_; ++pos) {
    if ((data_[pos >> 3] >> (7u - (pos & 7u))) & 1u) {
      throw MalformedStreamError("non-zero padding bits");
    }
  }
}

unsigned ue_bits(std::uint64_t v) {
  return 2u * static_cast<unsigned>(std::bit_width(v + 1) - 1) + 1u;
}

unsigned se_bits(std::int64_t v) { return ue_bits(se_to_ue(v)); }

std::uint64_t se_to_ue(std::int64_t v) {
  return v > 0 ? 2 * static_cast<std::uint64_t>(v) - 1
               : 2 * static_cast<std::uint64_t>(-v);
}

std::int64_t ue_to_se(std::uint64_t u) {
  return (u & 1u) ? static_cast<std::int64_t>((u + 1) / 2)
                  : -static_cast<std::int64_t>(u / 2);
}

void write_ue(BitWriter& w, std::uint64_t v) {
  if (v > kMaxUe) throw ContractError("ue value out of range: " + std::to_string(v));
  const std::uint64_t code = v + 1;
  const unsigned len = static_cast<unsigned>(std::bit_width(code));
  w.put_bits(0, len - 1);
  w.put_bits(code, len);
}

void write_se(BitWriter& w, std::int64_t v) {
  if (v > kMaxSeMagnitude || v < -kMaxSeMagnitude) {
    throw ContractError("se value out of range: " + std::to_string(v));
  }
  write_ue(w, se_to_ue(v));
}

void write_flag(BitWriter& w, bool flag) { w.put_bit(flag); }

std::uint32_t read_ue(BitReader& r) {
  unsigned zeros = 0;
  while (!r.get_bit()) {
    if (++zeros > 32) throw MalformedStreamError("exp-Golomb prefix longer than 32 bits");
  }
  const std::uint64_t code = (std::uint64_t{1} << zeros) | r.get_bits(zeros);
  const std::uint64_t v = code - 1;
  if (v > kMaxUe) throw MalformedStreamError("ue value exceeds 32 bits");
  return static_cast<std::uint32_t>(v);
}

std::int32_t read_se(BitReader& r) {
  const std::int64_t v = ue_to_se(read_ue(r));
  if (v > kMaxSeMagnitude || v < -kMaxSeMagnitude) {
    throw MalformedStreamError("se value out of range");
  }
  return static_cast<std::int32_t>(v);
}

bool read_flag(BitReader& r) { return r.get_bit(); }

}  // namespace roil
