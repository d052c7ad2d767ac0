#include "roil/json_io.hpp"

#include <limits>
#include <string>

#include "json.hpp"
#include "roil/errors.hpp"

namespace roil {
namespace {

using Json = nlohmann::ordered_json;

Json parse(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

const Json& field(const Json& obj, const char* key) {
  if (!obj.is_object()) throw ParseError(std::string("expected object holding '") + key + "'");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(std::string("missing field '") + key + "'");
  return *it;
}

template <typename T>
T as_int(const Json& v, const char* what) {
  if (v.is_number_unsigned()) {
    const auto u = v.get<std::uint64_t>();
    if (u <= static_cast<std::uint64_t>(std::numeric_limits<T>::max())) return static_cast<T>(u);
  } else if (v.is_number_integer()) {
    const auto s = v.get<std::int64_t>();
    if constexpr (std::numeric_limits<T>::is_signed) {
      if (s >= std::numeric_limits<T>::min() && s <= std::numeric_limits<T>::max()) {
        return static_cast<T>(s);
      }
    } else if (s >= 0 && static_cast<std::uint64_t>(s) <= std::numeric_limits<T>::max()) {
      return static_cast<T>(s);
    }
  } else {
    throw ParseError(std::string("'") + what + "' must be an integer");
  }
  throw ParseError(std::string("'") + what + "' out of range");
}

template <typename T>
T int_field(const Json& obj, const char* key) {
  return as_int<T>(field(obj, key), key);
}

double prob_field(const Json& obj, const char* key, double fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number()) throw ParseError(std::string("'") + key + "' must be a number");
  return it->get<double>();
}

template <typename T>
InclusiveRange<T> range_field(const Json& obj, const char* key, InclusiveRange<T> fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_array() || it->size() != 2) {
    throw ParseError(std::string("'") + key + "' must be [lo, hi]");
  }
  return {as_int<T>((*it)[0], key), as_int<T>((*it)[1], key)};
}

template <typename T>
T optional_int(const Json& obj, const char* key, T fallback) {
  auto it = obj.find(key);
  return it == obj.end() ? fallback : as_int<T>(*it, key);
}

PredictedRoi box_from(const Json& j) {
  return {int_field<std::uint32_t>(j, "x"), int_field<std::uint32_t>(j, "y"),
          int_field<std::uint32_t>(j, "w"), int_field<std::uint32_t>(j, "h")};
}

}  // namespace

SequenceRois sequence_from_json(std::string_view text) {
  const Json doc = parse(text);
  SequenceRois seq;
  seq.frame_width = int_field<std::uint32_t>(doc, "frame_width");
  seq.frame_height = int_field<std::uint32_t>(doc, "frame_height");
  const Json& frames = field(doc, "frames");
  if (!frames.is_array()) throw ParseError("'frames' must be an array");
  seq.frames.reserve(frames.size());
  for (const Json& jf : frames) {
    FrameRois f;
    f.frame_index = int_field<std::uint32_t>(jf, "frame_index");
    const Json& kind = field(jf, "kind");
    if (kind == "intra") f.kind = FrameKind::Intra;
    else if (kind == "inter") f.kind = FrameKind::Inter;
    else throw ParseError("'kind' must be \"intra\" or \"inter\"");
    const Json& rois = field(jf, "rois");
    if (!rois.is_array()) throw ParseError("'rois' must be an array");
    f.rois.reserve(rois.size());
    for (const Json& jr : rois) {
      f.rois.push_back({int_field<std::uint64_t>(jr, "label"), int_field<std::uint32_t>(jr, "x"),
                        int_field<std::uint32_t>(jr, "y"), int_field<std::uint32_t>(jr, "w"),
                        int_field<std::uint32_t>(jr, "h")});
    }
    seq.frames.push_back(std::move(f));
  }
  return seq;
}

std::string sequence_to_json(const SequenceRois& seq) {
  Json doc;
  doc["frame_width"] = seq.frame_width;
  doc["frame_height"] = seq.frame_height;
  Json frames = Json::array();
  for (const FrameRois& f : seq.frames) {
    Json jf;
    jf["frame_index"] = f.frame_index;
    jf["kind"] = f.kind == FrameKind::Intra ? "intra" : "inter";
    Json rois = Json::array();
    for (const Roi& r : f.rois) {
      rois.push_back(Json{{"label", r.label}, {"x", r.x}, {"y", r.y}, {"w", r.w}, {"h", r.h}});
    }
    jf["rois"] = std::move(rois);
    frames.push_back(std::move(jf));
  }
  doc["frames"] = std::move(frames);
  return doc.dump(2) + "\n";
}

SidecarTable sidecar_from_json(std::string_view text) {
  const Json doc = parse(text);
  if (!doc.is_array()) throw ParseError("sidecar must be an array indexed by frame_index");
  SidecarTable table;
  table.reserve(doc.size());
  for (const Json& entry : doc) {
    if (!entry.is_array()) throw ParseError("sidecar entries must be arrays of boxes");
    auto& boxes = table.emplace_back();
    for (const Json& b : entry) boxes.push_back(box_from(b));
  }
  return table;
}

std::string sidecar_to_json(const SidecarTable& table) {
  Json doc = Json::array();
  for (const auto& boxes : table) {
    Json entry = Json::array();
    for (const auto& b : boxes) entry.push_back(Json{{"x", b.x}, {"y", b.y}, {"w", b.w}, {"h", b.h}});
    doc.push_back(std::move(entry));
  }
  return doc.dump() + "\n";
}

MotionConfig motion_config_from_json(std::string_view text) {
  const Json doc = parse(text);
  if (!doc.is_object()) throw ParseError("generator config must be an object");
  MotionConfig c;
  c.seed = optional_int<std::uint64_t>(doc, "seed", c.seed);
  c.frame_count = optional_int<std::uint32_t>(doc, "frame_count", c.frame_count);
  c.frame_width = optional_int<std::uint32_t>(doc, "frame_width", c.frame_width);
  c.frame_height = optional_int<std::uint32_t>(doc, "frame_height", c.frame_height);
  c.rois_per_frame = range_field(doc, "rois_per_frame", c.rois_per_frame);
  c.velocity_range = range_field(doc, "velocity_range", c.velocity_range);
  c.size_jitter_range = range_field(doc, "size_jitter_range", c.size_jitter_range);
  c.spawn_prob = prob_field(doc, "spawn_prob", c.spawn_prob);
  c.despawn_prob = prob_field(doc, "despawn_prob", c.despawn_prob);
  c.static_fraction = prob_field(doc, "static_fraction", c.static_fraction);
  c.roi_size = range_field(doc, "roi_size", c.roi_size);
  c.gop_length = optional_int<std::uint16_t>(doc, "gop_length", c.gop_length);
  return c;
}

std::string motion_config_to_json(const MotionConfig& c) {
  Json doc;
  doc["seed"] = c.seed;
  doc["frame_count"] = c.frame_count;
  doc["frame_width"] = c.frame_width;
  doc["frame_height"] = c.frame_height;
  doc["rois_per_frame"] = {c.rois_per_frame.lo, c.rois_per_frame.hi};
  doc["velocity_range"] = {c.velocity_range.lo, c.velocity_range.hi};
  doc["size_jitter_range"] = {c.size_jitter_range.lo, c.size_jitter_range.hi};
  doc["spawn_prob"] = c.spawn_prob;
  doc["despawn_prob"] = c.despawn_prob;
  doc["static_fraction"] = c.static_fraction;
  doc["roi_size"] = {c.roi_size.lo, c.roi_size.hi};
  doc["gop_length"] = c.gop_length;
  return doc.dump(2) + "\n";
}

}  // namespace roil
