#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "ldmcap/classifiers.hpp"
#include "ldmcap/dataset.hpp"

namespace ldmcap {

/// Upper bound on C^N' (entries per simplex vector).
inline constexpr std::size_t kMaxLabelings = 10'000'000;

/// Added to every labeling probability before renormalizing, so that
/// log-probabilities stay finite for confident classifiers.
inline constexpr double kSmoothingEpsilon = 1e-10;

/// Number of labelings C^n of n points. Throws CapacityLimitError above
/// kMaxLabelings.
std::size_t labeling_count(int num_classes, std::size_t n);

/// Lexicographic (big-endian base-C) index of a holdout labeling: the first
/// point is the most significant digit, so "00...0" is index 0.
std::size_t labeling_to_index(std::span<const Label> labeling, int num_classes);

std::vector<Label> index_to_labeling(std::size_t index, int num_classes, std::size_t n);

/// Probability vector over all C^N' labelings of a holdout set.
class SimplexVector {
 public:
  /// Throws ArgumentError if the length is not C^N'.
  SimplexVector(std::vector<double> probs, int num_classes, std::size_t holdout_size);

  std::span<const double> probs() const noexcept { return probs_; }
  const std::vector<double>& values() const noexcept { return probs_; }
  int num_classes() const noexcept { return num_classes_; }
  std::size_t holdout_size() const noexcept { return holdout_size_; }
  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const noexcept { return probs_[i]; }

 private:
  std::vector<double> probs_;
  int num_classes_;
  std::size_t holdout_size_;
};

/// Product over points of per-point class probabilities for every labeling,
/// in lexicographic labeling order. `per_point` is N' x C. No smoothing.
std::vector<double> labeling_products(const Matrix& per_point);

/// Per-point predict_proba of `model` on each holdout row (N' x C).
Matrix holdout_probabilities(const Model& model, const Matrix& holdout_features);

/// Labeling distribution induced by `model`: labeling products, then
/// epsilon added to every entry and the vector renormalized.
SimplexVector simplex_vector(const Model& model, const Matrix& holdout_features,
                             double epsilon = kSmoothingEpsilon);

/// C^N' x K matrix of simplex vectors, one per label-permuted training run.
class LDMatrix {
 public:
  /// Throws ArgumentError when empty or when columns disagree on (C, N').
  LDMatrix(std::vector<SimplexVector> columns, std::vector<std::uint64_t> column_seeds);

  std::size_t rows() const noexcept { return columns_.front().size(); }
  std::size_t cols() const noexcept { return columns_.size(); }
  int num_classes() const noexcept { return columns_.front().num_classes(); }
  std::size_t holdout_size() const noexcept { return columns_.front().holdout_size(); }

  const SimplexVector& column(std::size_t i) const noexcept { return columns_[i]; }
  double operator()(std::size_t row, std::size_t col) const noexcept { return columns_[col][row]; }
  const std::vector<std::uint64_t>& column_seeds() const noexcept { return seeds_; }

  /// Column values as plain vectors (input shape for fit_dirichlet).
  std::vector<std::vector<double>> column_vectors() const;

 private:
  std::vector<SimplexVector> columns_;
  std::vector<std::uint64_t> seeds_;
};

struct LdmOptions {
  std::size_t columns = 100;
  std::size_t holdout_size = 5;
  std::uint64_t seed = 0;
  /// Worker threads; 0 uses std::thread::hardware_concurrency().
  unsigned threads = 0;
};

/// Builds an LDM. The holdout rows are drawn once from the master seed; for
/// column i the remaining labels are permuted and a model is fit with
/// streams derived from (seed, i), so the result does not depend on the
/// thread count.
LDMatrix build_ldm(const Learner& learner, const LabeledDataset& ds, const LdmOptions& options);

/// Same, for a spec resolved with LDM-context defaults.
LDMatrix build_ldm(const ClassifierSpec& spec, const LabeledDataset& ds, const LdmOptions& options);

/// CSV with header col_0..col_{K-1}; row r holds labeling index r.
/// Values use 17 significant digits.
std::string ldm_to_csv(const LDMatrix& ldm);
void write_ldm_csv(const LDMatrix& ldm, const std::filesystem::path& path);

}  // namespace ldmcap
