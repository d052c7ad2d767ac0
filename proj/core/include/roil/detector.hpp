#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <variant>
#include <vector>

#include "roil/scheme_reconstructed.hpp"

namespace roil {

/// Row-major 8-bit grayscale image standing in for a reconstructed frame.
struct FramePixels {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::vector<std::uint8_t> pixels;

  std::uint8_t at(std::uint32_t x, std::uint32_t y) const {
    return pixels[std::size_t{y} * width + x];
  }
  /// Throws ContractError unless width, height > 0 and the sizes agree.
  void check() const;
};

struct ConnectedComponentsConfig {
  std::uint8_t threshold = 128;  // foreground: pixel >= threshold
  std::uint32_t min_area = 1;    // minimum component pixel count

  friend bool operator==(const ConnectedComponentsConfig&,
                         const ConnectedComponentsConfig&) = default;
};

/// Predictions supplied out of band, one list per frame index.
struct SidecarOracleConfig {
  friend bool operator==(const SidecarOracleConfig&, const SidecarOracleConfig&) = default;
};

/// What the stream header records about the detector.
using DetectorDescriptor = std::variant<ConnectedComponentsConfig, SidecarOracleConfig>;

/// Binarizes at `threshold`, labels 4-connected foreground components and
/// returns the bounding box of every component with at least `min_area`
/// pixels, in canonical (y, x, w, h) order.
std::vector<PredictedRoi> detect_components(const FramePixels& frame,
                                            std::uint8_t threshold,
                                            std::uint32_t min_area);

using FrameSource = std::function<FramePixels(std::uint32_t frame_index)>;
using SidecarTable = std::vector<std::vector<PredictedRoi>>;

/// Deterministic predictor shared by encoder and decoder. Both sides must
/// see bit-identical inputs (frames or sidecar table) for the stream to
/// decode.
class Detector {
 public:
  static Detector connected_components(ConnectedComponentsConfig config, FrameSource frames);
  static Detector sidecar(SidecarTable table);

  /// Predictions for one frame in canonical order. Throws ConfigError when
  /// the frame source fails or the sidecar has no entry for `frame_index`.
  std::vector<PredictedRoi> predict(std::uint32_t frame_index) const;

  const DetectorDescriptor& descriptor() const { return descriptor_; }

 private:
  Detector() = default;

  DetectorDescriptor descriptor_;
  FrameSource frames_;
  std::shared_ptr<const SidecarTable> table_;
};

/// Reads a binary (P5) PGM with maxval <= 255.
FramePixels read_pgm(const std::filesystem::path& path);
void write_pgm(const std::filesystem::path& path, const FramePixels& frame);

/// File name used for frame `index` inside a --frames directory.
std::filesystem::path pgm_frame_path(const std::filesystem::path& dir, std::uint32_t index);

/// Frame source loading `dir/frame_NNNNNN.pgm`.
FrameSource pgm_directory_source(std::filesystem::path dir);

}  // namespace roil
