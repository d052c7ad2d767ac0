#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace roil {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller broke a documented precondition (label mismatch, value out of
/// codable range, frame inconsistent with encoder state, ...).
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Bad or incomplete configuration: missing detector, missing sidecar entry,
/// unreadable frame source.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// The bytes being decoded do not form a valid stream. Carries the frame
/// index when the failure is inside a frame record.
class MalformedStreamError : public Error {
 public:
  explicit MalformedStreamError(const std::string& what)
      : Error(what) {}
  MalformedStreamError(const std::string& what, std::uint32_t frame_index)
      : Error("frame " + std::to_string(frame_index) + ": " + what),
        frame_index_(frame_index) {}

  std::optional<std::uint32_t> frame_index() const { return frame_index_; }

 private:
  std::optional<std::uint32_t> frame_index_;
};

/// Text input (JSON, CLI specs) that cannot be parsed into the expected shape.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A lossless round trip produced different data. Always a codec bug.
class RoundTripError : public Error {
 public:
  using Error::Error;
};

}  // namespace roil
