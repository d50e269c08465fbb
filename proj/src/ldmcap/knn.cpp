#include <algorithm>
#include <numeric>

#include "classifiers_internal.hpp"
#include "ldmcap/kernels.hpp"

namespace ldmcap::detail {
namespace {

// Training features are stored feature-major so the distance loop runs over
// contiguous rows of one feature at a time.
class KnnModel final : public Model {
 public:
  KnnModel(const LabeledDataset& train, int k)
      : k_(static_cast<std::size_t>(std::min<std::size_t>(static_cast<std::size_t>(k), train.size()))),
        n_(train.size()),
        dim_(train.dim()),
        num_classes_(train.num_classes()),
        columns_(train.dim() * train.size()),
        labels_(train.labels()) {
    const Matrix& x = train.features();
    for (std::size_t r = 0; r < n_; ++r) {
      for (std::size_t f = 0; f < dim_; ++f) columns_[f * n_ + r] = x(r, f);
    }
  }

  int num_classes() const noexcept override { return num_classes_; }
  std::size_t dim() const noexcept override { return dim_; }

  void predict_proba_into(std::span<const double> x, std::span<double> out) const override {
    std::vector<double> dist(n_, 0.0);
    for (std::size_t f = 0; f < dim_; ++f) {
      kernels::add_squared_diff(std::span<const double>(columns_).subspan(f * n_, n_), x[f], dist);
    }
    std::vector<std::size_t> idx(n_);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    // Equal distances go to the lower training row.
    std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k_), idx.end(),
                      [&](std::size_t a, std::size_t b) {
                        return dist[a] < dist[b] || (dist[a] == dist[b] && a < b);
                      });
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t i = 0; i < k_; ++i) out[static_cast<std::size_t>(labels_[idx[i]])] += 1.0;
    for (double& p : out) p /= static_cast<double>(k_);
  }

 private:
  std::size_t k_;
  std::size_t n_;
  std::size_t dim_;
  int num_classes_;
  std::vector<double> columns_;
  std::vector<Label> labels_;
};

class KnnLearner final : public Learner {
 public:
  explicit KnnLearner(int k) : k_(k) {}
  std::unique_ptr<Model> fit(const LabeledDataset& train, Rng&) const override {
    return std::make_unique<KnnModel>(train, k_);
  }

 private:
  int k_;
};

}  // namespace

std::unique_ptr<Learner> make_knn(int k) { return std::make_unique<KnnLearner>(k); }

}  // namespace ldmcap::detail
