#include "ldmcap/heatmap.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "ldmcap/error.hpp"
#include "ldmcap/kernels.hpp"

namespace ldmcap {
namespace {

double global_max(const LDMatrix& ldm) {
  double m = kernels::max_value(ldm.column(0).probs());
  for (std::size_t c = 1; c < ldm.cols(); ++c) m = std::max(m, kernels::max_value(ldm.column(c).probs()));
  return m;
}

void write_bytes(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path.string());
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw IoError("write failed: " + path.string());
}

}  // namespace

HeatmapScale parse_heatmap_scale(std::string_view text) {
  if (text == "linear") return HeatmapScale::linear;
  if (text == "log") return HeatmapScale::log;
  throw ArgumentError("unknown heatmap scale '" + std::string(text) + "' (linear|log)");
}

std::vector<std::uint8_t> heatmap_pixels(const LDMatrix& ldm, const HeatmapConfig& config) {
  if (!(config.gamma > 0.0)) throw ArgumentError("heatmap gamma must be > 0");
  const double top = global_max(ldm);
  const double log_lo = std::log(config.log_floor);
  const double log_hi = top > 0.0 ? std::log(top) : log_lo;

  auto level = [&](double x) {
    double v = 0.0;
    if (config.scale == HeatmapScale::linear) {
      v = top > 0.0 ? x / top : 0.0;
    } else if (log_hi > log_lo) {
      v = x > 0.0 ? (std::log(x) - log_lo) / (log_hi - log_lo) : 0.0;
    } else {
      v = x >= top ? 1.0 : 0.0;
    }
    v = std::clamp(v, 0.0, 1.0);
    auto px = static_cast<int>(std::lround(255.0 * std::pow(v, config.gamma)));
    if (config.invert) px = 255 - px;
    return static_cast<std::uint8_t>(px);
  };

  std::vector<std::uint8_t> pixels(ldm.rows() * ldm.cols());
  for (std::size_t r = 0; r < ldm.rows(); ++r) {
    for (std::size_t c = 0; c < ldm.cols(); ++c) pixels[r * ldm.cols() + c] = level(ldm(r, c));
  }
  return pixels;
}

std::string heatmap_pgm(const LDMatrix& ldm, const HeatmapConfig& config) {
  const auto pixels = heatmap_pixels(ldm, config);
  std::string out = "P5\n" + std::to_string(ldm.cols()) + " " + std::to_string(ldm.rows()) + "\n255\n";
  out.append(reinterpret_cast<const char*>(pixels.data()), pixels.size());
  return out;
}

void render_pgm(const LDMatrix& ldm, const HeatmapConfig& config, const std::filesystem::path& path) {
  write_bytes(path, heatmap_pgm(ldm, config));

  nlohmann::ordered_json side;
  side["num_classes"] = ldm.num_classes();
  side["holdout_size"] = ldm.holdout_size();
  side["columns"] = ldm.cols();
  side["rows"] = ldm.rows();
  side["scale"] = config.scale == HeatmapScale::linear ? "linear" : "log";
  side["gamma"] = config.gamma;
  side["invert"] = config.invert;
  side["global_max"] = global_max(ldm);
  auto sidecar = path;
  sidecar += ".json";
  write_bytes(sidecar, side.dump(2) + "\n");
}

}  // namespace ldmcap
