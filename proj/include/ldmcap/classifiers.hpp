#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ldmcap/dataset.hpp"
#include "ldmcap/rng.hpp"

namespace ldmcap {

/// Per-class probabilities for one query point: nonnegative, summing to 1.
class ClassProbabilities {
 public:
  explicit ClassProbabilities(std::vector<double> probs) : probs_(std::move(probs)) {}

  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t c) const noexcept { return probs_[c]; }
  std::span<const double> values() const noexcept { return probs_; }

  /// Index of the largest entry; the lowest index wins ties.
  Label argmax() const noexcept;

 private:
  std::vector<double> probs_;
};

/// Index of the largest entry; the lowest index wins ties.
Label argmax(std::span<const double> probs) noexcept;

enum class Family { knn, gaussian_nb, decision_tree, random_forest, qda, adaboost };

std::string_view family_name(Family f) noexcept;

/// Where a spec is used. Tree defaults differ: depth 5 in LDM runs,
/// unpruned in label-recorder runs.
enum class SpecContext { ldm, recorder };

/// A classifier family plus hyperparameters, written as text like
/// `knn:k=3` or `random_forest:n=10,max_features=1,max_depth=5`.
///
/// Recognized keys (defaults in parentheses):
///   knn            k (5)
///   gaussian_nb    var_smoothing (1e-9)
///   decision_tree  max_depth (5 for ldm, none for recorder)
///   random_forest  n (10), max_features (1), max_depth (5 / none)
///   qda            reg (1e-6)
///   adaboost       rounds (50)
/// `max_depth=none` means unlimited depth.
struct ClassifierSpec {
  Family family = Family::knn;
  /// Only the keys given explicitly; see resolved().
  std::map<std::string, double> params;

  /// Throws ArgumentError for unknown families/keys or out-of-range values.
  static ClassifierSpec parse(std::string_view text);

  /// Canonical text form (family, then keys in sorted order).
  std::string to_string() const;

  /// File-name friendly form: `knn:k=3` -> `knn_k3`.
  std::string slug() const;

  /// Copy with every family default filled in for the given context.
  ClassifierSpec resolved(SpecContext context) const;

  /// Value of a key, or nullopt when absent. Unlimited depth reads as nullopt.
  std::optional<double> get(const std::string& key) const;

  bool operator==(const ClassifierSpec&) const = default;
};

/// A trained classifier. Immutable; safe to query from several threads.
class Model {
 public:
  virtual ~Model() = default;

  virtual int num_classes() const noexcept = 0;
  virtual std::size_t dim() const noexcept = 0;

  /// Throws ArgumentError when x.size() != dim().
  ClassProbabilities predict_proba(std::span<const double> x) const;

  /// argmax of predict_proba, lowest class index on ties.
  Label predict(std::span<const double> x) const;

  /// Unchecked variant writing into `out` (size num_classes()).
  virtual void predict_proba_into(std::span<const double> x, std::span<double> out) const = 0;
};

/// Fits models of one configuration.
class Learner {
 public:
  virtual ~Learner() = default;
  /// Deterministic families never touch `rng`.
  virtual std::unique_ptr<Model> fit(const LabeledDataset& train, Rng& rng) const = 0;
};

/// Learner for a parsed spec. Keys the spec leaves out take their LDM-context
/// defaults; call resolved(SpecContext::recorder) first for recorder runs.
std::unique_ptr<Learner> make_learner(const ClassifierSpec& spec);

std::unique_ptr<Model> fit(const ClassifierSpec& spec, const LabeledDataset& train, Rng& rng);

}  // namespace ldmcap
