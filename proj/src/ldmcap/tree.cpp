#include <algorithm>
#include <numeric>

#include "classifiers_internal.hpp"

namespace ldmcap::detail {

class TreeBuilder {
 public:
  TreeBuilder(const Matrix& x, std::span<const Label> y, std::span<const double> w,
              int num_classes, const TreeOptions& options, Rng* rng)
      : x_(x), y_(y), w_(w), classes_(static_cast<std::size_t>(num_classes)), options_(options),
        rng_(rng), features_(x.cols()) {
    std::iota(features_.begin(), features_.end(), std::size_t{0});
  }

  Tree build() {
    tree_.num_classes_ = static_cast<int>(classes_);
    std::vector<std::size_t> rows;
    for (std::size_t r = 0; r < y_.size(); ++r) {
      if (w_[r] > 0.0) rows.push_back(r);
    }
    grow(rows, 0);
    return std::move(tree_);
  }

 private:
  struct Split {
    bool found = false;
    std::size_t feature = 0;
    double threshold = 0.0;
    double score = 0.0;  // sum_c L_c^2 / W_L + sum_c R_c^2 / W_R; larger is purer
  };

  int grow(std::span<const std::size_t> rows, int depth) {
    const int id = static_cast<int>(tree_.nodes_.size());
    tree_.nodes_.emplace_back();
    tree_.depth_ = std::max(tree_.depth_, depth);

    std::vector<double> counts(classes_, 0.0);
    for (auto r : rows) counts[static_cast<std::size_t>(y_[r])] += w_[r];
    const auto nonzero = std::count_if(counts.begin(), counts.end(), [](double c) { return c > 0.0; });

    const bool depth_capped = options_.max_depth && depth >= *options_.max_depth;
    Split split;
    if (nonzero > 1 && !depth_capped && rows.size() >= 2) split = best_split(rows);

    if (!split.found) {
      const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
      tree_.nodes_[static_cast<std::size_t>(id)].dist_offset = tree_.leaf_dists_.size();
      for (double c : counts) tree_.leaf_dists_.push_back(c / total);
      return id;
    }

    std::vector<std::size_t> left;
    std::vector<std::size_t> right;
    for (auto r : rows) {
      (x_(r, split.feature) <= split.threshold ? left : right).push_back(r);
    }
    const int l = grow(left, depth + 1);
    const int rgt = grow(right, depth + 1);
    auto& node = tree_.nodes_[static_cast<std::size_t>(id)];
    node.feature = static_cast<int>(split.feature);
    node.threshold = split.threshold;
    node.left = l;
    node.right = rgt;
    return id;
  }

  // Candidate features: all of them, or (with max_features) the first
  // max_features non-constant ones in a random order, as CART forests do.
  Split best_split(std::span<const std::size_t> rows) {
    const std::size_t limit =
        options_.max_features > 0 ? static_cast<std::size_t>(options_.max_features) : features_.size();
    if (limit < features_.size() && rng_) std::shuffle(features_.begin(), features_.end(), *rng_);

    Split best;
    std::size_t evaluated = 0;
    std::vector<std::size_t> order(rows.begin(), rows.end());
    for (std::size_t fi = 0; fi < features_.size() && evaluated < limit; ++fi) {
      const std::size_t f = features_[fi];
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return x_(a, f) < x_(b, f); });
      if (x_(order.front(), f) == x_(order.back(), f)) continue;  // constant here
      ++evaluated;
      scan_feature(order, f, best);
    }
    if (limit < features_.size()) std::sort(features_.begin(), features_.end());
    return best;
  }

  void scan_feature(std::span<const std::size_t> order, std::size_t f, Split& best) const {
    std::vector<double> left(classes_, 0.0);
    std::vector<double> right(classes_, 0.0);
    double w_left = 0.0;
    double w_right = 0.0;
    for (auto r : order) {
      right[static_cast<std::size_t>(y_[r])] += w_[r];
      w_right += w_[r];
    }
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
      const auto r = order[i];
      const auto c = static_cast<std::size_t>(y_[r]);
      left[c] += w_[r];
      right[c] -= w_[r];
      w_left += w_[r];
      w_right -= w_[r];
      const double a = x_(r, f);
      const double b = x_(order[i + 1], f);
      if (a == b) continue;

      double sq_left = 0.0;
      double sq_right = 0.0;
      for (std::size_t k = 0; k < classes_; ++k) {
        sq_left += left[k] * left[k];
        sq_right += right[k] * right[k];
      }
      const double score = sq_left / w_left + sq_right / w_right;
      double threshold = a + (b - a) / 2.0;
      if (!(threshold < b)) threshold = a;

      // Zero-gain splits are accepted: an impure node with distinct rows is
      // always split, so unlimited trees separate every distinct point.
      const bool better =
          !best.found || score > best.score ||
          (score == best.score &&
           (f < best.feature || (f == best.feature && threshold < best.threshold)));
      if (better) best = Split{true, f, threshold, score};
    }
  }

  const Matrix& x_;
  std::span<const Label> y_;
  std::span<const double> w_;
  std::size_t classes_;
  TreeOptions options_;
  Rng* rng_;
  std::vector<std::size_t> features_;
  Tree tree_;
};

Tree Tree::grow(const Matrix& x, std::span<const Label> y, std::span<const double> weights,
                int num_classes, const TreeOptions& options, Rng* rng) {
  return TreeBuilder(x, y, weights, num_classes, options, rng).build();
}

std::span<const double> Tree::leaf_distribution(std::span<const double> query) const {
  std::size_t n = 0;
  while (nodes_[n].feature >= 0) {
    const auto& node = nodes_[n];
    n = static_cast<std::size_t>(query[static_cast<std::size_t>(node.feature)] <= node.threshold
                                     ? node.left
                                     : node.right);
  }
  return std::span<const double>(leaf_dists_).subspan(nodes_[n].dist_offset,
                                                      static_cast<std::size_t>(num_classes_));
}

namespace {

class TreeModel final : public Model {
 public:
  TreeModel(Tree tree, std::size_t dim, int num_classes)
      : tree_(std::move(tree)), dim_(dim), num_classes_(num_classes) {}
  int num_classes() const noexcept override { return num_classes_; }
  std::size_t dim() const noexcept override { return dim_; }
  void predict_proba_into(std::span<const double> x, std::span<double> out) const override {
    const auto leaf = tree_.leaf_distribution(x);
    std::copy(leaf.begin(), leaf.end(), out.begin());
  }

 private:
  Tree tree_;
  std::size_t dim_;
  int num_classes_;
};

class TreeLearner final : public Learner {
 public:
  explicit TreeLearner(std::optional<int> max_depth) : max_depth_(max_depth) {}
  std::unique_ptr<Model> fit(const LabeledDataset& train, Rng&) const override {
    const std::vector<double> weights(train.size(), 1.0);
    auto tree = Tree::grow(train.features(), train.labels(), weights, train.num_classes(),
                           TreeOptions{max_depth_, 0}, nullptr);
    return std::make_unique<TreeModel>(std::move(tree), train.dim(), train.num_classes());
  }

 private:
  std::optional<int> max_depth_;
};

}  // namespace

std::unique_ptr<Learner> make_decision_tree(std::optional<int> max_depth) {
  return std::make_unique<TreeLearner>(max_depth);
}

}  // namespace ldmcap::detail
