#include <doctest.h>

#include <cmath>
#include <numeric>

#include "ldmcap/error.hpp"
#include "ldmcap/ldm.hpp"
#include "test_support.hpp"

using namespace ldmcap;

namespace {

Matrix table(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m(rows.size(), rows.begin()->size());
  std::size_t r = 0;
  for (const auto& row : rows) {
    std::size_t c = 0;
    for (double v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

Matrix row_ids(std::size_t n) {
  Matrix m(n, 1);
  for (std::size_t r = 0; r < n; ++r) m(r, 0) = static_cast<double>(r);
  return m;
}

}  // namespace

TEST_CASE("labeling index examples") {
  const std::vector<Label> ridge{1, 0, 0, 0, 0};
  CHECK(labeling_to_index(ridge, 3) == 81);
  CHECK(labeling_to_index(std::vector<Label>{0, 0, 0, 0, 0}, 3) == 0);
  CHECK(labeling_to_index(std::vector<Label>{2, 2, 2, 2, 2}, 3) == 242);
  CHECK(labeling_to_index(std::vector<Label>{0, 1}, 3) == 1);
  CHECK(labeling_to_index(std::vector<Label>{2, 0, 0, 0, 0}, 3) == 162);
  CHECK(index_to_labeling(81, 3, 5) == ridge);
  CHECK(index_to_labeling(0, 2, 3) == std::vector<Label>{0, 0, 0});
  CHECK_THROWS_AS(labeling_to_index(std::vector<Label>{3, 0}, 3), ArgumentError);
  CHECK_THROWS_AS(index_to_labeling(243, 3, 5), ArgumentError);
}

TEST_CASE("labeling index round trip") {
  for (int c = 2; c <= 4; ++c) {
    for (std::size_t n = 1; n <= 5; ++n) {
      const std::size_t total = labeling_count(c, n);
      for (std::size_t i = 0; i < total; ++i) {
        const auto l = index_to_labeling(i, c, n);
        REQUIRE(l.size() == n);
        REQUIRE(labeling_to_index(l, c) == i);
      }
    }
  }
  CHECK(labeling_count(3, 5) == 243);
}

TEST_CASE("capacity guard") {
  CHECK(labeling_count(10, 7) == 10'000'000);
  CHECK_THROWS_AS(labeling_count(3, 20), CapacityLimitError);
  CHECK_THROWS_AS(labeling_count(10, 8), CapacityLimitError);
  CHECK_THROWS_AS(labeling_count(2, 200), CapacityLimitError);
}

TEST_CASE("labeling products on a two-point example") {
  const auto p = labeling_products(table({{0.6, 0.4}, {0.3, 0.7}}));
  const std::vector<double> expect{0.18, 0.42, 0.12, 0.28};
  REQUIRE(p.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(p[i] - expect[i]) <= 1e-15);
}

TEST_CASE("labeling products match brute-force enumeration") {
  std::mt19937_64 rng(7);
  std::gamma_distribution<double> g(0.7, 1.0);
  for (std::size_t c = 2; c <= 4; ++c) {
    for (std::size_t n = 1; n <= 5; ++n) {
      Matrix pp(n, c);
      for (std::size_t j = 0; j < n; ++j) {
        double t = 0.0;
        for (std::size_t k = 0; k < c; ++k) t += pp(j, k) = g(rng);
        for (std::size_t k = 0; k < c; ++k) pp(j, k) /= t;
      }
      const auto fast = labeling_products(pp);
      const auto oracle = testing::brute_force_labeling_products(pp);
      REQUIRE(fast.size() == oracle.size());
      for (std::size_t i = 0; i < fast.size(); ++i) CHECK(std::abs(fast[i] - oracle[i]) <= 1e-15);
    }
  }
}

TEST_CASE("uniform and one-hot simplex vectors") {
  const auto holdout = row_ids(5);
  const testing::FixedModel uniform(std::vector<double>(3, 1.0 / 3.0), 1);
  const auto u = simplex_vector(uniform, holdout);
  REQUIRE(u.size() == 243);
  for (double v : u.values()) CHECK(std::abs(v - 1.0 / 243.0) <= 1e-12);

  Matrix onehot(5, 3, 0.0);
  const std::vector<Label> truth{1, 0, 0, 0, 0};
  for (std::size_t j = 0; j < 5; ++j) onehot(j, static_cast<std::size_t>(truth[j])) = 1.0;
  const auto s = simplex_vector(testing::TableModel(onehot), holdout);
  const std::size_t at = labeling_to_index(truth, 3);
  CHECK(at == 81);
  CHECK(s[at] >= 1.0 - 243 * kSmoothingEpsilon);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i != at) CHECK(s[i] == doctest::Approx(kSmoothingEpsilon).epsilon(1e-6));
    CHECK(s[i] > 0.0);
  }
}

TEST_CASE("smoothed vectors are valid simplices for every family") {
  const auto ds = testing::random_feature_dataset(60, 3, 3, 12);
  Rng rng(1);
  const auto split = split_train_holdout(ds, 4, rng);
  for (const auto& text : testing::all_family_specs()) {
    CAPTURE(text);
    const auto model = fit(ClassifierSpec::parse(text), split.train, rng);
    const auto s = simplex_vector(*model, split.holdout_features);
    CHECK(s.size() == 81);
    CHECK(std::accumulate(s.values().begin(), s.values().end(), 0.0) ==
          doctest::Approx(1.0).epsilon(1e-12));
    for (double v : s.values()) CHECK(v > 0.0);
  }
}

TEST_CASE("build_ldm shape, normalization and determinism") {
  const auto& iris = builtin_iris();
  const LdmOptions opts{20, 4, 3, 1};
  const auto spec = ClassifierSpec::parse("knn:k=3");
  const auto a = build_ldm(spec, iris, opts);
  CHECK(a.rows() == 81);
  CHECK(a.cols() == 20);
  CHECK(a.num_classes() == 3);
  CHECK(a.holdout_size() == 4);
  for (std::size_t c = 0; c < a.cols(); ++c) {
    double t = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r) t += a(r, c);
    CHECK(t == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(a.column_seeds()[0] != a.column_seeds()[1]);

  auto parallel = opts;
  parallel.threads = 4;
  const auto b = build_ldm(spec, iris, parallel);
  CHECK(ldm_to_csv(a) == ldm_to_csv(b));
  CHECK(a.column_seeds() == b.column_seeds());

  auto other = opts;
  other.seed = 4;
  CHECK(ldm_to_csv(build_ldm(spec, iris, other)) != ldm_to_csv(a));

  auto too_big = opts;
  too_big.holdout_size = 20;
  CHECK_THROWS_AS(build_ldm(spec, iris, too_big), CapacityLimitError);
  auto one_col = opts;
  one_col.columns = 1;
  CHECK_THROWS_AS(build_ldm(spec, iris, one_col), ArgumentError);
}

TEST_CASE("label permutations change the columns of a data-dependent learner") {
  const auto ldm = build_ldm(ClassifierSpec::parse("knn:k=1"), builtin_iris(), LdmOptions{10, 3, 0, 1});
  std::size_t distinct = 0;
  for (std::size_t c = 1; c < ldm.cols(); ++c) {
    distinct += ldm.column(c).values() != ldm.column(0).values();
  }
  CHECK(distinct > 0);
}

TEST_CASE("LDM CSV format") {
  const auto ldm = build_ldm(testing::UniformLearner{}, builtin_iris(), LdmOptions{3, 2, 0, 1});
  const auto csv = ldm_to_csv(ldm);
  CHECK(csv.rfind("col_0,col_1,col_2\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 10);
  CHECK(csv.find("0.11111111111111") != std::string::npos);
}
