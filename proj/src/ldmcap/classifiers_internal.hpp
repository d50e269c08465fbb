#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "ldmcap/classifiers.hpp"

namespace ldmcap::detail {

/// Clamps to [0, inf), renormalizes. When nothing survives, spreads mass
/// uniformly over the classes that appeared in training.
void finalize_probabilities(std::span<double> probs, const std::vector<bool>& present);

/// Log-space scores -> probabilities over present classes (absent get 0).
void softmax_present(std::span<double> scores, const std::vector<bool>& present);

std::vector<bool> classes_present(const LabeledDataset& ds);

std::unique_ptr<Learner> make_knn(int k);
std::unique_ptr<Learner> make_gaussian_nb(double var_smoothing);
std::unique_ptr<Learner> make_qda(double reg);
std::unique_ptr<Learner> make_decision_tree(std::optional<int> max_depth);
std::unique_ptr<Learner> make_random_forest(int estimators, int max_features,
                                            std::optional<int> max_depth);
std::unique_ptr<Learner> make_adaboost(int rounds);

struct TreeOptions {
  std::optional<int> max_depth;  // nullopt: grow until pure / unsplittable
  int max_features = 0;          // 0: consider every feature at every node
};

/// CART tree on Gini impurity with per-sample weights. Leaves hold weighted
/// class frequencies.
class Tree {
 public:
  /// Samples with zero weight are ignored. `rng` is only used when
  /// options.max_features limits the candidate features.
  static Tree grow(const Matrix& x, std::span<const Label> y, std::span<const double> weights,
                   int num_classes, const TreeOptions& options, Rng* rng);

  /// Class frequencies at the leaf reached by `query` (size num_classes).
  std::span<const double> leaf_distribution(std::span<const double> query) const;

  std::size_t node_count() const noexcept { return nodes_.size(); }
  int depth() const noexcept { return depth_; }

 private:
  struct Node {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    std::size_t dist_offset = 0;
  };
  std::vector<Node> nodes_;
  std::vector<double> leaf_dists_;
  int num_classes_ = 0;
  int depth_ = 0;

  friend class TreeBuilder;
};

}  // namespace ldmcap::detail
