// roil: encode, decode, validate, generate and benchmark ROI metadata streams.
//
// Exit codes: 0 ok, 1 invalid data (JSON, sequence or stream), 2 I/O,
// 3 configuration (bad flags, missing detector, missing frames).

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "roil/container.hpp"
#include "roil/detector.hpp"
#include "roil/errors.hpp"
#include "roil/json_io.hpp"
#include "roil/report.hpp"
#include "roil/synth.hpp"

namespace fs = std::filesystem;

namespace {

enum Exit : int { kOk = 0, kInvalid = 1, kIo = 2, kConfig = 3 };

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::uint8_t> read_bytes(const fs::path& path) {
  const std::string s = read_text(path);
  return {s.begin(), s.end()};
}

void write_file(const fs::path& path, const void* data, std::size_t size) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
  if (!out) throw IoError("write failed: " + path.string());
}

void write_text(const fs::path& path, const std::string& text) {
  write_file(path, text.data(), text.size());
}

roil::Scheme parse_scheme(const std::string& name) {
  if (name == "direct") return roil::Scheme::Direct;
  if (name == "diff") return roil::Scheme::Differential;
  if (name == "recon") return roil::Scheme::Reconstructed;
  throw roil::ConfigError("unknown scheme '" + name + "'");
}

// "cc:<threshold>:<min_area>" or "oracle:<predictions.json>".
roil::Detector make_detector(const std::string& spec, const std::string& frames_dir) {
  if (spec.rfind("oracle:", 0) == 0) {
    const std::string path = spec.substr(7);
    if (path.empty()) throw roil::ConfigError("oracle detector needs a predictions file");
    try {
      return roil::Detector::sidecar(roil::sidecar_from_json(read_text(path)));
    } catch (const roil::ParseError& e) {
      throw roil::ConfigError(path + ": " + e.what());
    }
  }
  if (spec.rfind("cc:", 0) == 0) {
    std::istringstream in(spec.substr(3));
    unsigned long threshold = 0, min_area = 0;
    char sep = 0;
    if (!(in >> threshold >> sep >> min_area) || sep != ':' || !in.eof() || threshold > 255 ||
        min_area == 0 || min_area > UINT32_MAX) {
      throw roil::ConfigError("bad detector spec '" + spec + "', expected cc:<0-255>:<min_area>");
    }
    if (frames_dir.empty()) throw roil::ConfigError("cc detector needs --frames");
    return roil::Detector::connected_components(
        {static_cast<std::uint8_t>(threshold), static_cast<std::uint32_t>(min_area)},
        roil::pgm_directory_source(frames_dir));
  }
  throw roil::ConfigError("bad detector spec '" + spec + "'");
}

roil::SequenceRois load_sequence(const std::string& path) {
  return roil::sequence_from_json(read_text(path));
}

struct EncodeArgs {
  std::string scheme, input, output, detector, frames;
  std::optional<std::uint16_t> gop;
};

int run_encode(const EncodeArgs& a) {
  const roil::Scheme scheme = parse_scheme(a.scheme);
  roil::SequenceRois seq = load_sequence(a.input);

  roil::StreamConfig config;
  config.scheme = scheme;
  if (a.gop) {
    roil::apply_gop(seq, *a.gop);
    config.gop_length = *a.gop;
  } else if (auto gop = roil::infer_gop_length(seq)) {
    config.gop_length = *gop;
  } else {
    std::cerr << "error: frame kinds do not follow a fixed intra period; pass --gop\n";
    return kInvalid;
  }
  if (scheme == roil::Scheme::Reconstructed) {
    if (a.detector.empty()) throw roil::ConfigError("--scheme recon requires --detector");
    config.detector = make_detector(a.detector, a.frames);
  }

  const roil::EncodedStream encoded = roil::encode_stream(seq, config);
  write_file(a.output, encoded.bytes.data(), encoded.bytes.size());

  std::uint64_t total = 0;
  for (auto bits : encoded.payload_bits) total += bits;
  const auto frames = encoded.payload_bits.size();
  std::cout << "scheme=" << roil::scheme_name(scheme) << " frames=" << frames
            << " total_bits=" << total << " bits_per_frame="
            << (frames ? static_cast<double>(total) / static_cast<double>(frames) : 0.0)
            << " stream_bytes=" << encoded.bytes.size() << "\n";
  return kOk;
}

int run_decode(const std::string& input, const std::string& output,
               const std::string& detector_spec, const std::string& frames) {
  const auto bytes = read_bytes(input);
  const roil::StreamHeader header = roil::read_header(bytes);
  std::optional<roil::Detector> detector;
  if (header.scheme == roil::Scheme::Reconstructed) {
    if (const auto* cc = std::get_if<roil::ConnectedComponentsConfig>(&*header.detector)) {
      if (frames.empty()) throw roil::ConfigError("stream uses the cc detector; pass --frames");
      detector = roil::Detector::connected_components(*cc, roil::pgm_directory_source(frames));
    } else {
      if (detector_spec.rfind("oracle:", 0) != 0) {
        throw roil::ConfigError("stream uses the oracle detector; pass --detector oracle:<file>");
      }
      detector = make_detector(detector_spec, frames);
    }
  }
  const roil::SequenceRois seq = roil::read_stream(bytes, detector ? &*detector : nullptr);
  write_text(output, roil::sequence_to_json(seq));
  std::cout << "frames=" << seq.frames.size() << "\n";
  return kOk;
}

int run_validate(const std::string& input) {
  const auto violations = roil::validate_sequence(load_sequence(input));
  for (const auto& v : violations) std::cout << roil::describe(v) << "\n";
  if (!violations.empty()) return kInvalid;
  std::cout << "valid\n";
  return kOk;
}

int run_gen(const std::string& config_path, const std::string& output) {
  const roil::MotionConfig config = roil::motion_config_from_json(read_text(config_path));
  write_text(output, roil::sequence_to_json(roil::generate(config)));
  return kOk;
}

int run_bench(const std::string& input, const std::string& config_path, const std::string& csv,
              const std::string& detector_spec, const std::string& frames) {
  const roil::SequenceRois seq =
      !input.empty() ? load_sequence(input)
                     : roil::generate(roil::motion_config_from_json(read_text(config_path)));
  std::optional<roil::Detector> detector;
  if (!detector_spec.empty()) detector = make_detector(detector_spec, frames);
  const roil::SchemeReport report = roil::benchmark(seq, detector);
  std::cout << roil::to_table(report);
  if (!csv.empty()) write_text(csv, roil::to_csv(report));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lossless codec for per-frame ROI bounding-box metadata"};
  app.require_subcommand(1);

  EncodeArgs enc;
  auto* encode = app.add_subcommand("encode", "Encode a JSON ROI sequence into a stream");
  encode->add_option("--scheme", enc.scheme, "direct | diff | recon")
      ->required()
      ->check(CLI::IsMember({"direct", "diff", "recon"}));
  encode->add_option("--input", enc.input, "ROI sequence JSON")->required();
  encode->add_option("--output", enc.output, "Stream file to write")->required();
  encode->add_option("--gop", enc.gop, "Intra period (0 = first frame only); restamps frame kinds");
  encode->add_option("--detector", enc.detector, "cc:<threshold>:<min_area> | oracle:<predictions.json>");
  encode->add_option("--frames", enc.frames, "Directory of frame_NNNNNN.pgm for the cc detector");

  std::string dec_in, dec_out, dec_detector, dec_frames;
  auto* decode = app.add_subcommand("decode", "Decode a stream back to JSON");
  decode->add_option("--input", dec_in, "Stream file")->required();
  decode->add_option("--output", dec_out, "ROI sequence JSON to write")->required();
  decode->add_option("--frames", dec_frames, "Frames for cc-detector streams");
  decode->add_option("--detector", dec_detector, "oracle:<predictions.json> for oracle streams");

  std::string val_in;
  auto* validate = app.add_subcommand("validate", "Check a JSON ROI sequence");
  validate->add_option("--input", val_in, "ROI sequence JSON")->required();

  std::string gen_config, gen_out;
  auto* gen = app.add_subcommand("gen", "Generate a synthetic ROI sequence");
  gen->add_option("--config", gen_config, "Generator config JSON")->required();
  gen->add_option("--output", gen_out, "ROI sequence JSON to write")->required();

  std::string bench_in, bench_config, bench_csv, bench_detector, bench_frames;
  auto* bench = app.add_subcommand("bench", "Compare scheme sizes on one sequence");
  auto* bench_input_opt = bench->add_option("--input", bench_in, "ROI sequence JSON");
  auto* bench_config_opt = bench->add_option("--config", bench_config, "Generator config JSON");
  bench_input_opt->excludes(bench_config_opt);
  bench->add_option("--csv", bench_csv, "CSV report to write");
  bench->add_option("--detector", bench_detector, "Enables the reconstructed scheme");
  bench->add_option("--frames", bench_frames, "Frames for the cc detector");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    if (*encode) return run_encode(enc);
    if (*decode) return run_decode(dec_in, dec_out, dec_detector, dec_frames);
    if (*validate) return run_validate(val_in);
    if (*gen) return run_gen(gen_config, gen_out);
    if (*bench) {
      if (bench_in.empty() && bench_config.empty()) {
        throw roil::ConfigError("bench needs --input or --config");
      }
      return run_bench(bench_in, bench_config, bench_csv, bench_detector, bench_frames);
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const roil::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  } catch (const roil::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kOk;
}
