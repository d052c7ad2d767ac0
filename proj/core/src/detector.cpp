#include "roil/detector.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <string>

#include "roil/errors.hpp"

namespace roil {
namespace {

// Union-find over provisional component ids.
class Parents {
 public:
  std::uint32_t make() {
    const auto id = static_cast<std::uint32_t>(parent_.size());
    parent_.push_back(id);
    return id;
  }
  std::uint32_t find(std::uint32_t a) {
    while (parent_[a] != a) {
      parent_[a] = parent_[parent_[a]];
      a = parent_[a];
    }
    return a;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a < b) parent_[b] = a;
    else if (b < a) parent_[a] = b;
  }
  std::size_t size() const { return parent_.size(); }

 private:
  std::vector<std::uint32_t> parent_;
};

struct Extent {
  std::uint32_t x0 = UINT32_MAX, y0 = UINT32_MAX, x1 = 0, y1 = 0;
  std::uint64_t area = 0;
};

constexpr std::uint32_t kBackground = UINT32_MAX;

}  // namespace

void FramePixels::check() const {
  if (width == 0 || height == 0) throw ContractError("frame has zero size");
  if (pixels.size() != std::size_t{width} * height) {
    throw ContractError("frame pixel count does not match its geometry");
  }
}

std::vector<PredictedRoi> detect_components(const FramePixels& frame,
                                            std::uint8_t threshold,
                                            std::uint32_t min_area) {
  frame.check();
  const std::uint32_t W = frame.width;
  const std::uint32_t H = frame.height;
  std::vector<std::uint32_t> ids(frame.pixels.size(), kBackground);
  Parents sets;

  // First pass: provisional ids from the left and upper neighbours.
  for (std::uint32_t y = 0; y < H; ++y) {
    for (std::uint32_t x = 0; x < W; ++x) {
      const std::size_t i = std::size_t{y} * W + x;
      if (frame.pixels[i] < threshold) continue;
      const std::uint32_t left = x > 0 ? ids[i - 1] : kBackground;
      const std::uint32_t up = y > 0 ? ids[i - W] : kBackground;
      if (left == kBackground && up == kBackground) {
        ids[i] = sets.make();
      } else if (left == kBackground || up == kBackground) {
        ids[i] = left == kBackground ? up : left;
      } else {
        ids[i] = left;
        sets.unite(left, up);
      }
    }
  }

  // Second pass: accumulate extents per root.
  std::vector<Extent> extents(sets.size());
  for (std::uint32_t y = 0; y < H; ++y) {
    for (std::uint32_t x = 0; x < W; ++x) {
      const std::uint32_t id = ids[std::size_t{y} * W + x];
      if (id == kBackground) continue;
      Extent& e = extents[sets.find(id)];
      e.x0 = std::min(e.x0, x);
      e.y0 = std::min(e.y0, y);
      e.x1 = std::max(e.x1, x);
      e.y1 = std::max(e.y1, y);
      ++e.area;
    }
  }

  std::vector<PredictedRoi> out;
  for (const Extent& e : extents) {
    if (e.area == 0 || e.area < min_area) continue;
    out.push_back({e.x0, e.y0, e.x1 - e.x0 + 1, e.y1 - e.y0 + 1});
  }
  canonical_order(out);
  return out;
}

Detector Detector::connected_components(ConnectedComponentsConfig config, FrameSource frames) {
  if (!frames) throw ConfigError("connected-components detector needs a frame source");
  if (config.min_area == 0) throw ConfigError("min_area must be positive");
  Detector d;
  d.descriptor_ = config;
  d.frames_ = std::move(frames);
  return d;
}

Detector Detector::sidecar(SidecarTable table) {
  for (auto& entry : table) canonical_order(entry);
  Detector d;
  d.descriptor_ = SidecarOracleConfig{};
  d.table_ = std::make_shared<const SidecarTable>(std::move(table));
  return d;
}

std::vector<PredictedRoi> Detector::predict(std::uint32_t frame_index) const {
  if (const auto* cc = std::get_if<ConnectedComponentsConfig>(&descriptor_)) {
    return detect_components(frames_(frame_index), cc->threshold, cc->min_area);
  }
  if (frame_index >= table_->size()) {
    throw ConfigError("sidecar has no predictions for frame " + std::to_string(frame_index));
  }
  return (*table_)[frame_index];
}

FramePixels read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());

  auto next_token = [&]() {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
      if (c == '#') {
        while ((c = in.get()) != EOF && c != '\n') {}
        continue;
      }
      if (std::isspace(c)) {
        if (!tok.empty()) break;
        continue;
      }
      tok.push_back(static_cast<char>(c));
    }
    return tok;
  };

  if (next_token() != "P5") throw ConfigError(path.string() + ": not a binary PGM");
  FramePixels f;
  try {
    f.width = static_cast<std::uint32_t>(std::stoul(next_token()));
    f.height = static_cast<std::uint32_t>(std::stoul(next_token()));
    const unsigned long maxval = std::stoul(next_token());
    if (maxval == 0 || maxval > 255) throw ConfigError(path.string() + ": unsupported maxval");
  } catch (const std::logic_error&) {
    throw ConfigError(path.string() + ": bad PGM header");
  }
  f.pixels.resize(std::size_t{f.width} * f.height);
  in.read(reinterpret_cast<char*>(f.pixels.data()),
          static_cast<std::streamsize>(f.pixels.size()));
  if (static_cast<std::size_t>(in.gcount()) != f.pixels.size()) {
    throw ConfigError(path.string() + ": truncated pixel data");
  }
  return f;
}

void write_pgm(const std::filesystem::path& path, const FramePixels& frame) {
  frame.check();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << "P5\n" << frame.width << ' ' << frame.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(frame.pixels.data()),
            static_cast<std::streamsize>(frame.pixels.size()));
  if (!out) throw ConfigError("write failed: " + path.string());
}

std::filesystem::path pgm_frame_path(const std::filesystem::path& dir, std::uint32_t index) {
  char name[32];
  std::snprintf(name, sizeof name, "frame_%06u.pgm", index);
  return dir / name;
}

FrameSource pgm_directory_source(std::filesystem::path dir) {
  return [dir = std::move(dir)](std::uint32_t index) {
    return read_pgm(pgm_frame_path(dir, index));
  };
}

}  // namespace roil
