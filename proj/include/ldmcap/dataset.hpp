#pragma once

#include <cstddef>
#include <filesystem>
#include <string_view>
#include <vector>

#include "ldmcap/matrix.hpp"
#include "ldmcap/rng.hpp"

namespace ldmcap {

using Label = int;

/// Feature matrix plus dense integer labels in [0, num_classes).
///
/// Construction validates the invariants; an instance is immutable afterwards.
class LabeledDataset {
 public:
  /// Throws InvalidDatasetError on empty data, row/label count mismatch,
  /// num_classes < 2, or an out-of-range label.
  LabeledDataset(Matrix features, std::vector<Label> labels, int num_classes);

  const Matrix& features() const noexcept { return features_; }
  const std::vector<Label>& labels() const noexcept { return labels_; }
  int num_classes() const noexcept { return num_classes_; }
  std::size_t size() const noexcept { return labels_.size(); }
  std::size_t dim() const noexcept { return features_.cols(); }

  /// Same features and class count, new labels.
  LabeledDataset with_labels(std::vector<Label> labels) const;

  bool operator==(const LabeledDataset&) const = default;

 private:
  Matrix features_;
  std::vector<Label> labels_;
  int num_classes_;
};

struct HoldoutSplit {
  LabeledDataset train;
  Matrix holdout_features;
  /// Source-dataset row index of each holdout row, ascending.
  std::vector<std::size_t> holdout_rows;
};

/// Reads a comma-separated file. The first row is treated as a header when
/// any of its cells is non-numeric. The label column may hold integers or
/// strings; either way labels are mapped to 0..C-1 in first-appearance order.
LabeledDataset load_csv(const std::filesystem::path& path, std::size_t label_column);

/// Parses CSV text already in memory. `source` names the input in errors.
LabeledDataset parse_csv(std::string_view text, std::size_t label_column,
                         std::string_view source = "<memory>");

/// Fisher's Iris data (150 rows, 4 features, 3 classes of 50).
const LabeledDataset& builtin_iris();

/// Picks `holdout_size` rows uniformly without replacement; the rest form the
/// training set in their original order.
HoldoutSplit split_train_holdout(const LabeledDataset& ds, std::size_t holdout_size, Rng& rng);

/// Uniformly random rearrangement of the existing labels.
LabeledDataset permute_labels(const LabeledDataset& ds, Rng& rng);

/// Fresh labels drawn i.i.d. uniform over the dataset's classes.
LabeledDataset random_labels(const LabeledDataset& ds, Rng& rng);

}  // namespace ldmcap
