#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ldmcap/classifiers.hpp"
#include "ldmcap/dataset.hpp"

namespace ldmcap {

/// Mean number of random labels a learner reproduces on its own training
/// points, with a normal-approximation 95% interval.
struct CapacityEstimate {
  double mean_recovered = 0.0;
  double std_dev = 0.0;  // sample standard deviation of per-trial counts
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::size_t trials = 0;
  std::size_t dataset_size = 0;
  int num_classes = 0;
  std::vector<std::size_t> counts;  // per trial, in trial order
};

/// One label-recorder trial: draw i.i.d. uniform labels, fit, predict every
/// training row, count matches.
std::size_t record_trial(const Learner& learner, const LabeledDataset& ds, Rng& rng);

struct RecorderOptions {
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  unsigned threads = 0;  // 0: hardware concurrency
};

/// Runs `trials` independent trials with seeds derived from (seed, trial).
/// CI is mean +/- 1.96 s / sqrt(trials), clipped to [0, N]. Needs trials >= 2.
CapacityEstimate estimate_capacity(const Learner& learner, const LabeledDataset& ds,
                                   const RecorderOptions& options);

/// Same, for a spec resolved with recorder-context defaults (unpruned trees).
CapacityEstimate estimate_capacity(const ClassifierSpec& spec, const LabeledDataset& ds,
                                   const RecorderOptions& options);

/// Expected recovery of a model that stores nothing: N / C.
double chance_baseline(std::size_t n, int num_classes);

/// `trial,count` rows.
std::string trial_counts_csv(const CapacityEstimate& est);

/// Summary fields of CapacityEstimate (without per-trial counts) as JSON.
std::string capacity_json(const CapacityEstimate& est, const std::string& spec);

}  // namespace ldmcap
