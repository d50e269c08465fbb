// Gaussian naive Bayes and quadratic discriminant analysis.
#include <cmath>
#include <numbers>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "classifiers_internal.hpp"

namespace ldmcap::detail {
namespace {

constexpr double kLog2Pi = 1.8378770664093454835606594728112;

std::vector<std::size_t> class_counts(const LabeledDataset& ds) {
  std::vector<std::size_t> counts(static_cast<std::size_t>(ds.num_classes()), 0);
  for (Label l : ds.labels()) ++counts[static_cast<std::size_t>(l)];
  return counts;
}

class GaussianNbModel final : public Model {
 public:
  GaussianNbModel(const LabeledDataset& train, double var_smoothing)
      : dim_(train.dim()),
        num_classes_(train.num_classes()),
        present_(classes_present(train)),
        log_prior_(static_cast<std::size_t>(num_classes_), 0.0),
        mean_(static_cast<std::size_t>(num_classes_) * dim_, 0.0),
        var_(static_cast<std::size_t>(num_classes_) * dim_, 0.0) {
    const Matrix& x = train.features();
    const auto& y = train.labels();
    const std::size_t n = train.size();
    const auto counts = class_counts(train);

    // Smoothing is proportional to the widest feature variance of the whole set.
    double max_var = 0.0;
    for (std::size_t f = 0; f < dim_; ++f) {
      double mu = 0.0;
      for (std::size_t r = 0; r < n; ++r) mu += x(r, f);
      mu /= static_cast<double>(n);
      double v = 0.0;
      for (std::size_t r = 0; r < n; ++r) v += (x(r, f) - mu) * (x(r, f) - mu);
      max_var = std::max(max_var, v / static_cast<double>(n));
    }
    const double epsilon =
        std::max(var_smoothing * max_var, std::numeric_limits<double>::min());

    for (std::size_t r = 0; r < n; ++r) {
      const auto c = static_cast<std::size_t>(y[r]);
      for (std::size_t f = 0; f < dim_; ++f) mean_[c * dim_ + f] += x(r, f);
    }
    for (std::size_t c = 0; c < counts.size(); ++c) {
      if (counts[c] == 0) continue;
      for (std::size_t f = 0; f < dim_; ++f) mean_[c * dim_ + f] /= static_cast<double>(counts[c]);
    }
    for (std::size_t r = 0; r < n; ++r) {
      const auto c = static_cast<std::size_t>(y[r]);
      for (std::size_t f = 0; f < dim_; ++f) {
        const double d = x(r, f) - mean_[c * dim_ + f];
        var_[c * dim_ + f] += d * d;
      }
    }
    for (std::size_t c = 0; c < counts.size(); ++c) {
      log_prior_[c] = counts[c] ? std::log(static_cast<double>(counts[c]) / static_cast<double>(n))
                                : 0.0;
      for (std::size_t f = 0; f < dim_; ++f) {
        auto& v = var_[c * dim_ + f];
        v = (counts[c] ? v / static_cast<double>(counts[c]) : 0.0) + epsilon;
      }
    }
  }

  int num_classes() const noexcept override { return num_classes_; }
  std::size_t dim() const noexcept override { return dim_; }

  void predict_proba_into(std::span<const double> x, std::span<double> out) const override {
    for (std::size_t c = 0; c < out.size(); ++c) {
      if (!present_[c]) {
        out[c] = 0.0;
        continue;
      }
      double ll = log_prior_[c];
      for (std::size_t f = 0; f < dim_; ++f) {
        const double v = var_[c * dim_ + f];
        const double d = x[f] - mean_[c * dim_ + f];
        ll -= 0.5 * (kLog2Pi + std::log(v) + d * d / v);
      }
      out[c] = ll;
    }
    softmax_present(out, present_);
  }

 private:
  std::size_t dim_;
  int num_classes_;
  std::vector<bool> present_;
  std::vector<double> log_prior_;
  std::vector<double> mean_;  // class-major
  std::vector<double> var_;
};

class QdaModel final : public Model {
 public:
  QdaModel(const LabeledDataset& train, double reg)
      : dim_(train.dim()), num_classes_(train.num_classes()), present_(classes_present(train)) {
    const Matrix& x = train.features();
    const auto& y = train.labels();
    const std::size_t n = train.size();
    const auto d = static_cast<Eigen::Index>(dim_);
    const auto counts = class_counts(train);

    Eigen::MatrixXd all(static_cast<Eigen::Index>(n), d);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t f = 0; f < dim_; ++f) all(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(f)) = x(r, f);
    }
    // Fallback scale for classes whose own covariance vanishes (fewer than
    // two distinct points): the average variance of the whole training set.
    const Eigen::RowVectorXd grand_mean = all.colwise().mean();
    const double pooled_scale =
        (all.rowwise() - grand_mean).squaredNorm() / static_cast<double>(n) / static_cast<double>(dim_);

    classes_.resize(static_cast<std::size_t>(num_classes_));
    for (std::size_t c = 0; c < classes_.size(); ++c) {
      if (counts[c] == 0) continue;
      Eigen::MatrixXd members(static_cast<Eigen::Index>(counts[c]), d);
      Eigen::Index row = 0;
      for (std::size_t r = 0; r < n; ++r) {
        if (static_cast<std::size_t>(y[r]) == c) members.row(row++) = all.row(static_cast<Eigen::Index>(r));
      }
      auto& cls = classes_[c];
      cls.mean = members.colwise().mean().transpose();
      const Eigen::MatrixXd centered = members.rowwise() - cls.mean.transpose();
      Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(d, d);
      if (counts[c] >= 2) cov = centered.transpose() * centered / static_cast<double>(counts[c] - 1);

      double scale = cov.trace() / static_cast<double>(dim_);
      if (!(scale > 0.0)) scale = pooled_scale > 0.0 ? pooled_scale : 1.0;
      cov.diagonal().array() += reg * scale;

      Eigen::LLT<Eigen::MatrixXd> llt(cov);
      if (llt.info() != Eigen::Success) {
        cov.diagonal().array() += scale;  // numerically indefinite; widen further
        llt.compute(cov);
      }
      cls.chol = llt.matrixL();
      cls.log_det = 2.0 * cls.chol.diagonal().array().log().sum();
      cls.log_prior = std::log(static_cast<double>(counts[c]) / static_cast<double>(n));
    }
  }

  int num_classes() const noexcept override { return num_classes_; }
  std::size_t dim() const noexcept override { return dim_; }

  void predict_proba_into(std::span<const double> x, std::span<double> out) const override {
    const Eigen::Map<const Eigen::VectorXd> q(x.data(), static_cast<Eigen::Index>(dim_));
    for (std::size_t c = 0; c < out.size(); ++c) {
      if (!present_[c]) {
        out[c] = 0.0;
        continue;
      }
      const auto& cls = classes_[c];
      const Eigen::VectorXd z = cls.chol.triangularView<Eigen::Lower>().solve(q - cls.mean);
      out[c] = cls.log_prior - 0.5 * (static_cast<double>(dim_) * kLog2Pi + cls.log_det + z.squaredNorm());
    }
    softmax_present(out, present_);
  }

 private:
  struct ClassGaussian {
    Eigen::VectorXd mean;
    Eigen::MatrixXd chol;
    double log_det = 0.0;
    double log_prior = 0.0;
  };
  std::size_t dim_;
  int num_classes_;
  std::vector<bool> present_;
  std::vector<ClassGaussian> classes_;
};

class GaussianNbLearner final : public Learner {
 public:
  explicit GaussianNbLearner(double s) : smoothing_(s) {}
  std::unique_ptr<Model> fit(const LabeledDataset& train, Rng&) const override {
    return std::make_unique<GaussianNbModel>(train, smoothing_);
  }

 private:
  double smoothing_;
};

class QdaLearner final : public Learner {
 public:
  explicit QdaLearner(double reg) : reg_(reg) {}
  std::unique_ptr<Model> fit(const LabeledDataset& train, Rng&) const override {
    return std::make_unique<QdaModel>(train, reg_);
  }

 private:
  double reg_;
};

}  // namespace

std::unique_ptr<Learner> make_gaussian_nb(double var_smoothing) {
  return std::make_unique<GaussianNbLearner>(var_smoothing);
}

std::unique_ptr<Learner> make_qda(double reg) { return std::make_unique<QdaLearner>(reg); }

}  // namespace ldmcap::detail
