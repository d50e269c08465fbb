#include "ldmcap/recorder.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "ldmcap/error.hpp"
#include "ldmcap/parallel.hpp"

namespace ldmcap {

std::size_t record_trial(const Learner& learner, const LabeledDataset& ds, Rng& rng) {
  const LabeledDataset noisy = random_labels(ds, rng);
  const auto model = learner.fit(noisy, rng);
  std::size_t hits = 0;
  for (std::size_t r = 0; r < noisy.size(); ++r) {
    if (model->predict(noisy.features().row(r)) == noisy.labels()[r]) ++hits;
  }
  return hits;
}

CapacityEstimate estimate_capacity(const Learner& learner, const LabeledDataset& ds,
                                   const RecorderOptions& options) {
  if (options.trials < 2) throw ArgumentError("estimate_capacity needs at least 2 trials");
  CapacityEstimate est;
  est.trials = options.trials;
  est.dataset_size = ds.size();
  est.num_classes = ds.num_classes();
  est.counts.assign(options.trials, 0);

  parallel_for(options.trials, options.threads, [&](std::size_t t) {
    Rng rng = make_rng(derive_seed(options.seed, "recorder.trial", t));
    est.counts[t] = record_trial(learner, ds, rng);
  });

  // Integer counts: the sum is exact, so the mean is order independent.
  double total = 0.0;
  for (auto c : est.counts) total += static_cast<double>(c);
  const double k = static_cast<double>(options.trials);
  est.mean_recovered = total / k;
  double ss = 0.0;
  for (auto c : est.counts) {
    const double d = static_cast<double>(c) - est.mean_recovered;
    ss += d * d;
  }
  est.std_dev = std::sqrt(ss / (k - 1.0));
  const double half = 1.96 * est.std_dev / std::sqrt(k);
  const double n = static_cast<double>(ds.size());
  est.ci_low = std::clamp(est.mean_recovered - half, 0.0, n);
  est.ci_high = std::clamp(est.mean_recovered + half, 0.0, n);
  return est;
}

CapacityEstimate estimate_capacity(const ClassifierSpec& spec, const LabeledDataset& ds,
                                   const RecorderOptions& options) {
  return estimate_capacity(*make_learner(spec.resolved(SpecContext::recorder)), ds, options);
}

double chance_baseline(std::size_t n, int num_classes) {
  if (n < 1 || num_classes < 2) throw ArgumentError("chance_baseline needs N >= 1 and C >= 2");
  return static_cast<double>(n) / static_cast<double>(num_classes);
}

std::string trial_counts_csv(const CapacityEstimate& est) {
  std::string out = "trial,count\n";
  for (std::size_t t = 0; t < est.counts.size(); ++t) {
    out += std::to_string(t) + "," + std::to_string(est.counts[t]) + "\n";
  }
  return out;
}

std::string capacity_json(const CapacityEstimate& est, const std::string& spec) {
  nlohmann::ordered_json j;
  j["spec"] = spec;
  j["mean_recovered"] = est.mean_recovered;
  j["std_dev"] = est.std_dev;
  j["ci_low"] = est.ci_low;
  j["ci_high"] = est.ci_high;
  j["trials"] = est.trials;
  j["dataset_size"] = est.dataset_size;
  j["num_classes"] = est.num_classes;
  j["chance_baseline"] = chance_baseline(est.dataset_size, est.num_classes);
  return j.dump(2);
}

}  // namespace ldmcap
