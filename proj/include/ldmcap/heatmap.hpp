#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ldmcap/ldm.hpp"

namespace ldmcap {

enum class HeatmapScale { linear, log };

struct HeatmapConfig {
  HeatmapScale scale = HeatmapScale::linear;
  double gamma = 1.0;  // display exponent, > 0
  bool invert = false;
  /// Value mapped to black under log scale.
  double log_floor = kSmoothingEpsilon;
};

HeatmapScale parse_heatmap_scale(std::string_view text);

/// Grayscale image of an LDM: one row per labeling (index 0 at the top), one
/// column per training run. Row-major, rows() * cols() bytes.
std::vector<std::uint8_t> heatmap_pixels(const LDMatrix& ldm, const HeatmapConfig& config);

/// Binary PGM (P5, maxval 255) bytes for heatmap_pixels.
std::string heatmap_pgm(const LDMatrix& ldm, const HeatmapConfig& config);

/// Writes the PGM to `path` and a JSON sidecar to `path` + ".json" holding
/// (num_classes, holdout_size, columns, scale, gamma, invert, global_max).
void render_pgm(const LDMatrix& ldm, const HeatmapConfig& config, const std::filesystem::path& path);

}  // namespace ldmcap
