#include <algorithm>
#include <cmath>
#include <limits>

#include "classifiers_internal.hpp"
#include "ldmcap/error.hpp"

namespace ldmcap {

Label argmax(std::span<const double> probs) noexcept {
  Label best = 0;
  for (std::size_t c = 1; c < probs.size(); ++c) {
    if (probs[c] > probs[static_cast<std::size_t>(best)]) best = static_cast<Label>(c);
  }
  return best;
}

Label ClassProbabilities::argmax() const noexcept { return ldmcap::argmax(probs_); }

ClassProbabilities Model::predict_proba(std::span<const double> x) const {
  if (x.size() != dim()) {
    throw ArgumentError("query has " + std::to_string(x.size()) + " features, model expects " +
                        std::to_string(dim()));
  }
  std::vector<double> out(static_cast<std::size_t>(num_classes()));
  predict_proba_into(x, out);
  return ClassProbabilities(std::move(out));
}

Label Model::predict(std::span<const double> x) const { return predict_proba(x).argmax(); }

namespace detail {

std::vector<bool> classes_present(const LabeledDataset& ds) {
  std::vector<bool> present(static_cast<std::size_t>(ds.num_classes()), false);
  for (Label l : ds.labels()) present[static_cast<std::size_t>(l)] = true;
  return present;
}

void finalize_probabilities(std::span<double> probs, const std::vector<bool>& present) {
  double total = 0.0;
  for (double& p : probs) {
    if (!(p > 0.0) || !std::isfinite(p)) p = 0.0;
    total += p;
  }
  if (total > 0.0 && std::isfinite(total)) {
    for (double& p : probs) p /= total;
    return;
  }
  const auto n_present = std::count(present.begin(), present.end(), true);
  for (std::size_t c = 0; c < probs.size(); ++c) {
    probs[c] = present[c] ? 1.0 / static_cast<double>(n_present) : 0.0;
  }
}

void softmax_present(std::span<double> scores, const std::vector<bool>& present) {
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < scores.size(); ++c) {
    if (present[c] && scores[c] > top) top = scores[c];
  }
  for (std::size_t c = 0; c < scores.size(); ++c) {
    scores[c] = present[c] && std::isfinite(top) ? std::exp(scores[c] - top) : 0.0;
  }
  finalize_probabilities(scores, present);
}

}  // namespace detail
}  // namespace ldmcap
