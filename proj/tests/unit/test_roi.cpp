#include <random>

#include "doctest.h"
#include "roil/errors.hpp"
#include "roil/roi.hpp"

using namespace roil;

namespace {

SequenceRois one_frame(std::vector<Roi> rois) {
  return {64, 64, {{0, FrameKind::Intra, std::move(rois)}}};
}

bool has_rule(const std::vector<Violation>& v, const char* rule, std::uint32_t frame) {
  for (const auto& x : v) {
    if (x.rule == rule && x.frame_index == frame) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("minimal valid sequence has an empty report") {
  CHECK(validate_sequence(one_frame({{1, 0, 0, 16, 16}})).empty());
}

TEST_CASE("labels out of order are reported at their frame") {
  auto report = validate_sequence(one_frame({{2, 0, 0, 4, 4}, {1, 8, 8, 4, 4}}));
  CHECK(has_rule(report, rule::kLabelOrder, 0));
}

TEST_CASE("duplicate labels are reported as an ordering violation") {
  auto report = validate_sequence(one_frame({{1, 0, 0, 4, 4}, {1, 8, 8, 4, 4}}));
  CHECK(has_rule(report, rule::kLabelOrder, 0));
}

TEST_CASE("new label must be the next unused one") {
  SequenceRois seq{64, 64,
                   {{0, FrameKind::Intra, {{1, 0, 0, 4, 4}, {2, 8, 8, 4, 4}}},
                    {1, FrameKind::Inter, {{1, 0, 0, 4, 4}, {2, 8, 8, 4, 4}, {5, 20, 20, 4, 4}}}}};
  auto report = validate_sequence(seq);
  REQUIRE(report.size() == 1);
  CHECK(report[0].rule == std::string(rule::kNonConsecutive));
  CHECK(report[0].frame_index == 1);

  seq.frames[1].rois[2].label = 3;
  CHECK(validate_sequence(seq).empty());
}

TEST_CASE("a vanished label cannot come back in an inter frame") {
  SequenceRois seq{64, 64,
                   {{0, FrameKind::Intra, {{1, 0, 0, 4, 4}, {2, 8, 8, 4, 4}}},
                    {1, FrameKind::Inter, {{2, 8, 8, 4, 4}}},
                    {2, FrameKind::Inter, {{1, 0, 0, 4, 4}, {2, 8, 8, 4, 4}}}}};
  CHECK(has_rule(validate_sequence(seq), rule::kContinuity, 2));

  // An intra frame has no reference, so reuse is allowed there.
  seq.frames[2].kind = FrameKind::Intra;
  CHECK(validate_sequence(seq).empty());
}

TEST_CASE("sequence-level rules") {
  SUBCASE("first frame must be intra") {
    SequenceRois seq{64, 64, {{0, FrameKind::Inter, {}}}};
    CHECK(has_rule(validate_sequence(seq), rule::kFirstNotIntra, 0));
  }
  SUBCASE("frame indices strictly increase") {
    SequenceRois seq{64, 64, {{3, FrameKind::Intra, {}}, {3, FrameKind::Inter, {}}}};
    CHECK(has_rule(validate_sequence(seq), rule::kFrameOrder, 3));
  }
  SUBCASE("geometry") {
    CHECK(has_rule(validate_sequence(one_frame({{1, 60, 0, 8, 4}})), rule::kOutOfFrame, 0));
    CHECK(has_rule(validate_sequence(one_frame({{1, 0, 0, 0, 4}})), rule::kZeroArea, 0));
    CHECK(has_rule(validate_sequence(one_frame({{0, 0, 0, 4, 4}})), rule::kBadLabel, 0));
    CHECK(has_rule(validate_sequence(SequenceRois{0, 10, {}}), rule::kBadGeometry, 0));
  }
  SUBCASE("roi count cap") {
    std::vector<Roi> many;
    for (std::uint64_t i = 1; i <= kMaxRoisPerFrame + 1; ++i) many.push_back({i, 0, 0, 1, 1});
    CHECK(has_rule(validate_sequence(one_frame(std::move(many))), rule::kTooMany, 0));
  }
}

TEST_CASE("ValidationError summarizes the first violation") {
  auto v = validate_sequence(one_frame({{2, 0, 0, 4, 4}, {1, 8, 8, 4, 4}}));
  ValidationError e(v);
  CHECK(std::string(e.what()).find(rule::kLabelOrder) != std::string::npos);
  CHECK(e.violations().size() == v.size());
}

TEST_CASE("diff examples") {
  CHECK(diff({1, 10, 10, 20, 20}, {1, 10, 10, 20, 20}) == RoiDelta{0, 0, 0, 0});
  CHECK(diff({2, 52, 50, 30, 30}, {2, 50, 50, 30, 30}) == RoiDelta{2, 0, 0, 0});
  CHECK(diff({3, 5, 8, 10, 12}, {3, 9, 8, 14, 10}) == RoiDelta{-4, 0, -4, 2});
  CHECK_THROWS_AS(diff({1, 0, 0, 1, 1}, {2, 0, 0, 1, 1}), ContractError);
}

TEST_CASE("apply_delta examples") {
  CHECK(apply_delta({1, 10, 10, 20, 20}, {0, 0, 0, 0}) == Roi{1, 10, 10, 20, 20});
  CHECK(apply_delta({2, 50, 50, 30, 30}, {2, 0, 0, 0}) == Roi{2, 52, 50, 30, 30});
  CHECK_THROWS_AS(apply_delta({1, 0, 0, 4, 4}, {0, 0, -4, 0}), MalformedStreamError);
  CHECK_THROWS_AS(apply_delta({1, 0, 0, 4, 4}, {-1, 0, 0, 0}), MalformedStreamError);
  CHECK_THROWS_AS(apply_delta({1, 0, 0, 4, 4}, {0, 0, 0, -5}), MalformedStreamError);
}

TEST_CASE("diff and apply_delta are inverse and antisymmetric") {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<std::uint32_t> pos(0, 4000), size(1, 500);
  for (int i = 0; i < 5000; ++i) {
    const Roi a{7, pos(rng), pos(rng), size(rng), size(rng)};
    const Roi b{7, pos(rng), pos(rng), size(rng), size(rng)};
    CHECK(apply_delta(b, diff(a, b)) == a);
    CHECK(diff(a, b) == -diff(b, a));
  }
}
