#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "ldmcap/classifiers.hpp"
#include "ldmcap/heatmap.hpp"

namespace ldmcap::cli {

enum ExitCode : int { kSuccess = 0, kUsageOrDataError = 1, kCapacityLimit = 2 };

/// Experiment-level settings shared by all subcommands.
struct RunConfig {
  /// `iris` or `csv:PATH:LABELCOL`.
  std::string dataset = "iris";
  std::vector<ClassifierSpec> specs;
  std::size_t columns = 100;  // K
  std::size_t holdout = 5;    // N'
  std::size_t trials = 1000;
  std::size_t repeats = 20;   // LDM entropies averaged over this many seeds
  std::uint64_t seed = 0;
  std::filesystem::path out_dir = ".";
  HeatmapScale scale = HeatmapScale::linear;
  unsigned threads = 0;
};

/// Loads the dataset named by RunConfig::dataset.
LabeledDataset load_dataset(const std::string& source);

/// Seed of LDM repeat r. Repeat entropies are averaged per spec.
std::uint64_t repeat_seed(std::uint64_t master, std::size_t repeat);

/// Per spec: LDM + Dirichlet entropy for every repeat seed. Writes
/// <slug>.json (fit report of repeat 0 plus all repeat entropies),
/// <slug>.csv (LDM of repeat 0) and <slug>.pgm (+ .pgm.json sidecar).
int cmd_ldm(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Per spec: label-recorder estimate. Writes <slug>_record.json and
/// <slug>_trials.csv.
int cmd_record(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Both pipelines for >= 2 specs; writes compare.csv sorted by recorder mean,
/// highest first.
int cmd_compare(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Entry point for the ldmcap executable.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ldmcap::cli
