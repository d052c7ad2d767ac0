#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "roil/detector.hpp"
#include "roil/errors.hpp"

using namespace roil;

namespace {

FramePixels blank(std::uint32_t w, std::uint32_t h) {
  return {w, h, std::vector<std::uint8_t>(std::size_t{w} * h, 0)};
}

void fill(FramePixels& f, std::uint32_t x, std::uint32_t y, std::uint32_t w, std::uint32_t h,
          std::uint8_t v = 255) {
  for (std::uint32_t yy = y; yy < y + h; ++yy) {
    for (std::uint32_t xx = x; xx < x + w; ++xx) f.pixels[std::size_t{yy} * f.width + xx] = v;
  }
}

std::filesystem::path temp_dir(const char* name) {
  auto dir = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("empty frame yields no predictions") {
  CHECK(detect_components(blank(64, 48), 128, 1).empty());
}

TEST_CASE("one block yields its bounding box") {
  auto f = blank(64, 64);
  fill(f, 20, 30, 10, 10);
  CHECK(detect_components(f, 128, 4) == std::vector<PredictedRoi>{{20, 30, 10, 10}});
}

TEST_CASE("diagonal neighbours are separate components") {
  auto f = blank(16, 16);
  fill(f, 2, 2, 3, 3);
  fill(f, 5, 5, 3, 3);  // touches the first block only at a corner
  const auto boxes = detect_components(f, 128, 1);
  CHECK(boxes == std::vector<PredictedRoi>{{2, 2, 3, 3}, {5, 5, 3, 3}});
}

TEST_CASE("threshold, min_area and component shapes") {
  auto f = blank(32, 32);
  fill(f, 0, 0, 1, 1);          // single pixel
  fill(f, 10, 10, 2, 8);        // L-shape: vertical bar
  fill(f, 10, 17, 9, 1);        //          and foot
  fill(f, 25, 2, 4, 4, 100);    // below threshold
  CHECK(detect_components(f, 128, 1) ==
        std::vector<PredictedRoi>{{0, 0, 1, 1}, {10, 10, 9, 8}});
  CHECK(detect_components(f, 128, 2) == std::vector<PredictedRoi>{{10, 10, 9, 8}});
  CHECK(detect_components(f, 100, 2).size() == 2);
}

TEST_CASE("U-shaped component merges labels from both arms") {
  auto f = blank(12, 8);
  fill(f, 1, 1, 2, 6);
  fill(f, 8, 1, 2, 6);
  fill(f, 1, 6, 9, 1);
  CHECK(detect_components(f, 1, 1) == std::vector<PredictedRoi>{{1, 1, 9, 6}});
}

TEST_CASE("matches a flood-fill oracle and boxes are tight") {
  std::mt19937_64 rng(21);
  for (int round = 0; round < 300; ++round) {
    const std::uint32_t w = 1 + rng() % 24, h = 1 + rng() % 24;
    FramePixels f = blank(w, h);
    const unsigned density = 20 + rng() % 60;
    for (auto& p : f.pixels) p = (rng() % 100 < density) ? static_cast<std::uint8_t>(rng()) : 0;
    const std::uint8_t threshold = static_cast<std::uint8_t>(1 + rng() % 200);
    const std::uint32_t min_area = 1 + rng() % 4;

    std::vector<PredictedRoi> want;
    for (const auto& c : oracle::flood_fill(f, threshold)) {
      if (c.area >= min_area) want.push_back({c.x0, c.y0, c.x1 - c.x0 + 1, c.y1 - c.y0 + 1});
    }
    canonical_order(want);
    const auto got = detect_components(f, threshold, min_area);
    REQUIRE(got == want);
    CHECK(detect_components(f, threshold, min_area) == got);

    for (const auto& b : got) {
      auto row_has = [&](std::uint32_t y) {
        for (std::uint32_t x = b.x; x < b.x + b.w; ++x) if (f.at(x, y) >= threshold) return true;
        return false;
      };
      auto col_has = [&](std::uint32_t x) {
        for (std::uint32_t y = b.y; y < b.y + b.h; ++y) if (f.at(x, y) >= threshold) return true;
        return false;
      };
      CHECK(row_has(b.y));
      CHECK(row_has(b.y + b.h - 1));
      CHECK(col_has(b.x));
      CHECK(col_has(b.x + b.w - 1));
    }
  }
}

TEST_CASE("invalid frames are rejected") {
  FramePixels f{4, 4, std::vector<std::uint8_t>(15)};
  CHECK_THROWS_AS(detect_components(f, 1, 1), ContractError);
}

TEST_CASE("sidecar detector") {
  auto d = Detector::sidecar({{{5, 9, 1, 1}, {1, 2, 3, 4}}, {}});
  CHECK(std::holds_alternative<SidecarOracleConfig>(d.descriptor()));
  CHECK(d.predict(0) == std::vector<PredictedRoi>{{1, 2, 3, 4}, {5, 9, 1, 1}});
  CHECK(d.predict(1).empty());
  CHECK_THROWS_AS(d.predict(2), ConfigError);
}

TEST_CASE("connected-components detector reads frames from a source") {
  auto f = blank(32, 32);
  fill(f, 3, 4, 5, 6);
  auto d = Detector::connected_components({128, 2}, [f](std::uint32_t) { return f; });
  CHECK(d.descriptor() == DetectorDescriptor{ConnectedComponentsConfig{128, 2}});
  CHECK(d.predict(17) == std::vector<PredictedRoi>{{3, 4, 5, 6}});
  CHECK_THROWS_AS(Detector::connected_components({128, 0}, [f](std::uint32_t) { return f; }),
                  ConfigError);
  CHECK_THROWS_AS(Detector::connected_components({128, 1}, nullptr), ConfigError);
}

TEST_CASE("PGM files") {
  const auto dir = temp_dir("roil_test_pgm");
  auto f = blank(7, 3);
  for (std::size_t i = 0; i < f.pixels.size(); ++i) f.pixels[i] = static_cast<std::uint8_t>(i * 11);
  write_pgm(pgm_frame_path(dir, 4), f);
  CHECK(pgm_frame_path(dir, 4).filename() == "frame_000004.pgm");

  const auto back = read_pgm(pgm_frame_path(dir, 4));
  CHECK(back.width == 7);
  CHECK(back.height == 3);
  CHECK(back.pixels == f.pixels);

  const auto source = pgm_directory_source(dir);
  CHECK(source(4).pixels == f.pixels);
  CHECK_THROWS_AS(source(5), ConfigError);

  {
    std::ofstream out(dir / "comment.pgm", std::ios::binary);
    out << "P5\n# made by hand\n2 1\n255\n" << '\x01' << '\xff';
  }
  CHECK(read_pgm(dir / "comment.pgm").pixels == std::vector<std::uint8_t>{1, 255});
  {
    std::ofstream out(dir / "bad.pgm", std::ios::binary);
    out << "P2\n2 1\n255\n1 2\n";
  }
  CHECK_THROWS_AS(read_pgm(dir / "bad.pgm"), ConfigError);
  {
    std::ofstream out(dir / "short.pgm", std::ios::binary);
    out << "P5\n4 4\n255\n" << "abc";
  }
  CHECK_THROWS_AS(read_pgm(dir / "short.pgm"), ConfigError);
  std::filesystem::remove_all(dir);
}
