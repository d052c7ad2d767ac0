#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "roil/errors.hpp"
#include "roil/scheme_direct.hpp"

using namespace roil;
using oracle::bits_of;
using oracle::ue;

namespace {

std::string encode_bits(const std::vector<Roi>& rois) {
  BitWriter w;
  encode_direct(rois, w);
  return bits_of(w);
}

std::vector<Roi> decode_bits(const std::string& bits) {
  auto bytes = oracle::pack(bits);
  BitReader r(bytes);
  return decode_direct(r);
}

std::vector<Roi> random_frame(std::mt19937_64& rng, std::size_t n) {
  std::vector<Roi> rois;
  std::uint64_t label = 0;
  for (std::size_t i = 0; i < n; ++i) {
    label += 1 + rng() % 5;
    rois.push_back({label, static_cast<std::uint32_t>(rng() % 4096),
                    static_cast<std::uint32_t>(rng() % 4096),
                    static_cast<std::uint32_t>(1 + rng() % 512),
                    static_cast<std::uint32_t>(1 + rng() % 512)});
  }
  return rois;
}

}  // namespace

TEST_CASE("empty frame is a single bit") {
  CHECK(encode_bits({}) == "1");
  CHECK(decode_bits("1").empty());
}

TEST_CASE("single roi golden payload") {
  const std::string expected = "010" "1" "1" "1" "000010001" "000010001";
  REQUIRE(expected.size() == 24);
  CHECK(encode_bits({{1, 0, 0, 16, 16}}) == expected);
  CHECK(decode_bits(expected) == std::vector<Roi>{{1, 0, 0, 16, 16}});
}

TEST_CASE("label steps follow the first-roi rule") {
  const std::vector<Roi> rois{{2, 3, 4, 5, 6}, {5, 7, 8, 9, 10}};
  const std::string expected = ue(2) + ue(1) + ue(3) + ue(4) + ue(5) + ue(6) +
                               ue(3) + ue(7) + ue(8) + ue(9) + ue(10);
  CHECK(encode_bits(rois) == expected);
  CHECK(decode_bits(expected) == rois);
}

TEST_CASE("decode errors") {
  const std::string good = "010" "1" "1" "1" "000010001" "000010001";
  SUBCASE("truncated payload") {
    auto bytes = oracle::pack(good);
    bytes.pop_back();
    BitReader r(bytes);
    CHECK_THROWS_AS(decode_direct(r), MalformedStreamError);
  }
  SUBCASE("count above the cap") {
    CHECK_THROWS_AS(decode_bits(ue(kMaxRoisPerFrame + 1)), MalformedStreamError);
  }
  SUBCASE("repeated label") {
    const std::string bits = ue(2) + ue(0) + ue(1) + ue(1) + ue(1) + ue(1) +
                             ue(0) + ue(1) + ue(1) + ue(1) + ue(1);
    CHECK_THROWS_AS(decode_bits(bits), MalformedStreamError);
  }
  SUBCASE("zero width") {
    CHECK_THROWS_AS(decode_bits(ue(1) + ue(0) + ue(0) + ue(0) + ue(0) + ue(3)),
                    MalformedStreamError);
  }
}

TEST_CASE("encode rejects unordered labels") {
  BitWriter w;
  CHECK_THROWS_AS(encode_direct(std::vector<Roi>{{3, 0, 0, 1, 1}, {2, 0, 0, 1, 1}}, w),
                  ContractError);
  CHECK_THROWS_AS(encode_direct(std::vector<Roi>{{0, 0, 0, 1, 1}}, w), ContractError);
}

TEST_CASE("lossless and pure over random frames") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 2000; ++i) {
    const auto rois = random_frame(rng, rng() % 40);
    const std::string bits = encode_bits(rois);
    CHECK(encode_bits(rois) == bits);
    auto bytes = oracle::pack(bits);
    BitReader r(bytes);
    REQUIRE(decode_direct(r) == rois);
    CHECK_NOTHROW(r.expect_zero_padding());
  }
}

TEST_CASE("payload grows strictly with the roi count") {
  std::vector<Roi> rois;
  std::size_t last = encode_bits(rois).size();
  for (std::uint64_t n = 1; n <= 300; ++n) {
    rois.push_back({n, 12, 34, 56, 78});
    const std::size_t bits = encode_bits(rois).size();
    CHECK(bits > last);
    last = bits;
  }
}
