#include "ldmcap/ldm.hpp"

#include <cstdio>
#include <fstream>

#include "ldmcap/error.hpp"
#include "ldmcap/kernels.hpp"
#include "ldmcap/parallel.hpp"

namespace ldmcap {

std::size_t labeling_count(int num_classes, std::size_t n) {
  if (num_classes < 1) throw ArgumentError("labeling_count: need at least one class");
  std::size_t count = 1;
  for (std::size_t j = 0; j < n; ++j) {
    if (count > kMaxLabelings / static_cast<std::size_t>(num_classes)) {
      throw CapacityLimitError("C^N' = " + std::to_string(num_classes) + "^" + std::to_string(n) +
                               " exceeds the limit of " + std::to_string(kMaxLabelings) +
                               " labelings; use a smaller holdout");
    }
    count *= static_cast<std::size_t>(num_classes);
  }
  return count;
}

std::size_t labeling_to_index(std::span<const Label> labeling, int num_classes) {
  std::size_t index = 0;
  for (std::size_t j = 0; j < labeling.size(); ++j) {
    const Label l = labeling[j];
    if (l < 0 || l >= num_classes) {
      throw ArgumentError("labeling entry " + std::to_string(j) + " = " + std::to_string(l) +
                          " outside [0, " + std::to_string(num_classes) + ")");
    }
    index = index * static_cast<std::size_t>(num_classes) + static_cast<std::size_t>(l);
  }
  return index;
}

std::vector<Label> index_to_labeling(std::size_t index, int num_classes, std::size_t n) {
  if (num_classes < 1) throw ArgumentError("index_to_labeling: need at least one class");
  std::vector<Label> labeling(n);
  const auto base = static_cast<std::size_t>(num_classes);
  for (std::size_t j = n; j-- > 0;) {
    labeling[j] = static_cast<Label>(index % base);
    index /= base;
  }
  if (index != 0) {
    throw ArgumentError("labeling index out of range for " + std::to_string(num_classes) + "^" +
                        std::to_string(n) + " labelings");
  }
  return labeling;
}

SimplexVector::SimplexVector(std::vector<double> probs, int num_classes, std::size_t holdout_size)
    : probs_(std::move(probs)), num_classes_(num_classes), holdout_size_(holdout_size) {
  if (probs_.size() != labeling_count(num_classes, holdout_size)) {
    throw ArgumentError("simplex vector length " + std::to_string(probs_.size()) +
                        " does not equal C^N'");
  }
}

std::vector<double> labeling_products(const Matrix& per_point) {
  const std::size_t n = per_point.rows();
  const std::size_t c = per_point.cols();
  if (n == 0 || c == 0) throw ArgumentError("labeling_products: empty probability table");
  const std::size_t total = labeling_count(static_cast<int>(c), n);

  // Build from the last (least significant) point backwards. After absorbing
  // points j..n-1 the buffer is indexed by their labeling; prepending point
  // j-1 with class k places a scaled copy of the buffer at block k.
  std::vector<double> cur(total);
  std::vector<double> next(total);
  const auto last = per_point.row(n - 1);
  std::copy(last.begin(), last.end(), cur.begin());
  std::size_t len = c;
  for (std::size_t j = n - 1; j-- > 0;) {
    const auto p = per_point.row(j);
    for (std::size_t k = 0; k < c; ++k) {
      kernels::scale(std::span<const double>(cur.data(), len), p[k],
                     std::span<double>(next.data() + k * len, len));
    }
    len *= c;
    cur.swap(next);
  }
  return cur;
}

Matrix holdout_probabilities(const Model& model, const Matrix& holdout_features) {
  Matrix out(holdout_features.rows(), static_cast<std::size_t>(model.num_classes()));
  for (std::size_t j = 0; j < holdout_features.rows(); ++j) {
    const auto probs = model.predict_proba(holdout_features.row(j));
    std::copy(probs.values().begin(), probs.values().end(), out.row(j).begin());
  }
  return out;
}

SimplexVector simplex_vector(const Model& model, const Matrix& holdout_features, double epsilon) {
  if (holdout_features.rows() == 0) throw ArgumentError("simplex_vector: empty holdout set");
  labeling_count(model.num_classes(), holdout_features.rows());  // guard before any work
  auto probs = labeling_products(holdout_probabilities(model, holdout_features));
  const double total = kernels::add_constant_and_sum(probs, epsilon);
  kernels::scale(probs, 1.0 / total, probs);
  return SimplexVector(std::move(probs), model.num_classes(), holdout_features.rows());
}

LDMatrix::LDMatrix(std::vector<SimplexVector> columns, std::vector<std::uint64_t> column_seeds)
    : columns_(std::move(columns)), seeds_(std::move(column_seeds)) {
  if (columns_.empty()) throw ArgumentError("LDMatrix needs at least one column");
  if (seeds_.size() != columns_.size()) throw ArgumentError("one seed per column required");
  for (const auto& col : columns_) {
    if (col.num_classes() != columns_.front().num_classes() ||
        col.holdout_size() != columns_.front().holdout_size()) {
      throw ArgumentError("LDMatrix columns disagree on classes or holdout size");
    }
  }
}

std::vector<std::vector<double>> LDMatrix::column_vectors() const {
  std::vector<std::vector<double>> out;
  out.reserve(columns_.size());
  for (const auto& c : columns_) out.push_back(c.values());
  return out;
}

LDMatrix build_ldm(const Learner& learner, const LabeledDataset& ds, const LdmOptions& options) {
  if (options.columns < 2) throw ArgumentError("an LDM needs at least 2 columns");
  labeling_count(ds.num_classes(), options.holdout_size);

  Rng holdout_rng = make_rng(derive_seed(options.seed, "ldm.holdout"));
  const HoldoutSplit split = split_train_holdout(ds, options.holdout_size, holdout_rng);

  std::vector<std::uint64_t> seeds(options.columns);
  for (std::size_t i = 0; i < seeds.size(); ++i) seeds[i] = derive_seed(options.seed, "ldm.column", i);

  std::vector<std::optional<SimplexVector>> built(options.columns);
  parallel_for(options.columns, options.threads, [&](std::size_t i) {
    Rng permute_rng = make_rng(derive_seed(seeds[i], "permute"));
    Rng fit_rng = make_rng(derive_seed(seeds[i], "fit"));
    const auto train = permute_labels(split.train, permute_rng);
    const auto model = learner.fit(train, fit_rng);
    built[i].emplace(simplex_vector(*model, split.holdout_features));
  });

  std::vector<SimplexVector> columns;
  columns.reserve(built.size());
  for (auto& b : built) columns.push_back(std::move(*b));
  return LDMatrix(std::move(columns), std::move(seeds));
}

LDMatrix build_ldm(const ClassifierSpec& spec, const LabeledDataset& ds, const LdmOptions& options) {
  return build_ldm(*make_learner(spec.resolved(SpecContext::ldm)), ds, options);
}

std::string ldm_to_csv(const LDMatrix& ldm) {
  std::string out;
  out.reserve(ldm.rows() * ldm.cols() * 24 + ldm.cols() * 8);
  for (std::size_t c = 0; c < ldm.cols(); ++c) {
    if (c) out += ',';
    out += "col_" + std::to_string(c);
  }
  out += '\n';
  char buf[32];
  for (std::size_t r = 0; r < ldm.rows(); ++r) {
    for (std::size_t c = 0; c < ldm.cols(); ++c) {
      if (c) out += ',';
      const int len = std::snprintf(buf, sizeof buf, "%.17g", ldm(r, c));
      out.append(buf, static_cast<std::size_t>(len));
    }
    out += '\n';
  }
  return out;
}

void write_ldm_csv(const LDMatrix& ldm, const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path.string());
  f << ldm_to_csv(ldm);
  if (!f) throw IoError("write failed: " + path.string());
}

}  // namespace ldmcap
