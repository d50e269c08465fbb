// Random forest (bagged CART trees) and AdaBoost-SAMME over decision stumps.
#include <algorithm>
#include <cmath>
#include <numeric>

#include "classifiers_internal.hpp"

namespace ldmcap::detail {
namespace {

class ForestModel final : public Model {
 public:
  ForestModel(std::vector<Tree> trees, std::size_t dim, int num_classes)
      : trees_(std::move(trees)), dim_(dim), num_classes_(num_classes) {}
  int num_classes() const noexcept override { return num_classes_; }
  std::size_t dim() const noexcept override { return dim_; }

  void predict_proba_into(std::span<const double> x, std::span<double> out) const override {
    std::fill(out.begin(), out.end(), 0.0);
    for (const auto& t : trees_) {
      const auto leaf = t.leaf_distribution(x);
      for (std::size_t c = 0; c < out.size(); ++c) out[c] += leaf[c];
    }
    for (double& p : out) p /= static_cast<double>(trees_.size());
  }

 private:
  std::vector<Tree> trees_;
  std::size_t dim_;
  int num_classes_;
};

class ForestLearner final : public Learner {
 public:
  ForestLearner(int estimators, int max_features, std::optional<int> max_depth)
      : estimators_(estimators), options_{max_depth, max_features} {}

  std::unique_ptr<Model> fit(const LabeledDataset& train, Rng& rng) const override {
    const std::size_t n = train.size();
    std::uniform_int_distribution<std::size_t> draw(0, n - 1);
    std::vector<Tree> trees;
    trees.reserve(static_cast<std::size_t>(estimators_));
    std::vector<double> weights(n);
    for (int t = 0; t < estimators_; ++t) {
      // Bootstrap sample as multiplicity weights.
      std::fill(weights.begin(), weights.end(), 0.0);
      for (std::size_t i = 0; i < n; ++i) weights[draw(rng)] += 1.0;
      trees.push_back(Tree::grow(train.features(), train.labels(), weights,
                                 train.num_classes(), options_, &rng));
    }
    return std::make_unique<ForestModel>(std::move(trees), train.dim(), train.num_classes());
  }

 private:
  int estimators_;
  TreeOptions options_;
};

class BoostModel final : public Model {
 public:
  BoostModel(std::vector<Tree> stumps, std::vector<double> weights, std::vector<bool> present,
             std::size_t dim, int num_classes)
      : stumps_(std::move(stumps)),
        weights_(std::move(weights)),
        present_(std::move(present)),
        dim_(dim),
        num_classes_(num_classes) {
    n_present_ = static_cast<double>(std::count(present_.begin(), present_.end(), true));
    total_weight_ = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  }
  int num_classes() const noexcept override { return num_classes_; }
  std::size_t dim() const noexcept override { return dim_; }

  // Weighted vote share per class, mapped through a softmax with the SAMME
  // symmetric-coding scale K / (K-1)^2 for K observed classes.
  void predict_proba_into(std::span<const double> x, std::span<double> out) const override {
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t m = 0; m < stumps_.size(); ++m) {
      out[static_cast<std::size_t>(argmax(stumps_[m].leaf_distribution(x)))] += weights_[m];
    }
    if (n_present_ < 2.0) {
      finalize_probabilities(out, present_);
      return;
    }
    const double scale = n_present_ / ((n_present_ - 1.0) * (n_present_ - 1.0)) / total_weight_;
    for (double& s : out) s *= scale;
    softmax_present(out, present_);
  }

 private:
  std::vector<Tree> stumps_;
  std::vector<double> weights_;
  std::vector<bool> present_;
  std::size_t dim_;
  int num_classes_;
  double n_present_ = 0.0;
  double total_weight_ = 0.0;
};

class BoostLearner final : public Learner {
 public:
  explicit BoostLearner(int rounds) : rounds_(rounds) {}

  std::unique_ptr<Model> fit(const LabeledDataset& train, Rng&) const override {
    const std::size_t n = train.size();
    const auto& y = train.labels();
    auto present = classes_present(train);
    const double k = static_cast<double>(std::count(present.begin(), present.end(), true));

    std::vector<double> w(n, 1.0 / static_cast<double>(n));
    std::vector<Tree> stumps;
    std::vector<double> alphas;
    std::vector<bool> miss(n);
    for (int round = 0; round < rounds_; ++round) {
      Tree stump = Tree::grow(train.features(), y, w, train.num_classes(), TreeOptions{1, 0}, nullptr);
      double err = 0.0;
      double total = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        miss[i] = argmax(stump.leaf_distribution(train.features().row(i))) != y[i];
        if (miss[i]) err += w[i];
        total += w[i];
      }
      err /= total;

      if (err <= 0.0) {  // perfect stump: it decides alone
        stumps.push_back(std::move(stump));
        alphas.push_back(1.0);
        break;
      }
      if (err >= 1.0 - 1.0 / k) {  // no better than chance
        if (stumps.empty()) {
          stumps.push_back(std::move(stump));
          alphas.push_back(1.0);
        }
        break;
      }
      const double alpha = std::log((1.0 - err) / err) + std::log(k - 1.0);
      double sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (miss[i]) w[i] *= std::exp(alpha);
        sum += w[i];
      }
      for (double& wi : w) wi /= sum;
      stumps.push_back(std::move(stump));
      alphas.push_back(alpha);
    }
    return std::make_unique<BoostModel>(std::move(stumps), std::move(alphas), std::move(present),
                                        train.dim(), train.num_classes());
  }

 private:
  int rounds_;
};

}  // namespace

std::unique_ptr<Learner> make_random_forest(int estimators, int max_features,
                                            std::optional<int> max_depth) {
  return std::make_unique<ForestLearner>(estimators, max_features, max_depth);
}

std::unique_ptr<Learner> make_adaboost(int rounds) { return std::make_unique<BoostLearner>(rounds); }

}  // namespace ldmcap::detail
