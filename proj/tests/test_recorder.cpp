#include <doctest.h>

#include <cmath>

#include "ldmcap/error.hpp"
#include "ldmcap/recorder.hpp"
#include "test_support.hpp"

using namespace ldmcap;

TEST_CASE("memorizing learners recover every label") {
  const auto ds = testing::random_feature_dataset(60, 2, 3, 30);
  for (const char* text : {"knn:k=1", "decision_tree"}) {
    CAPTURE(text);
    const auto est = estimate_capacity(ClassifierSpec::parse(text), ds, {20, 1, 1});
    CHECK(est.mean_recovered == 60.0);
    CHECK(est.std_dev == 0.0);
    CHECK(est.ci_high == 60.0);
    for (auto c : est.counts) CHECK(c == 60);
  }
}

TEST_CASE("a constant classifier sits at the chance baseline") {
  const auto ds = testing::random_feature_dataset(150, 2, 3, 31);
  const auto est = estimate_capacity(testing::ConstantLearner{}, ds, {2000, 5, 1});
  const double sd = std::sqrt(150.0 / 3.0 * 2.0 / 3.0);
  CHECK(chance_baseline(150, 3) == 50.0);
  CHECK(std::abs(est.mean_recovered - 50.0) <= 4.0 * sd / std::sqrt(2000.0));
  CHECK(est.std_dev == doctest::Approx(sd).epsilon(0.05));
  CHECK(est.ci_low <= 50.0);
  CHECK(est.ci_high >= 50.0);
}

TEST_CASE("interval arithmetic and clamping") {
  const auto ds = testing::random_feature_dataset(30, 2, 2, 32);
  const auto est = estimate_capacity(testing::ConstantLearner{}, ds, {400, 7, 1});
  REQUIRE(est.counts.size() == 400);
  double mean = 0.0;
  for (auto c : est.counts) mean += static_cast<double>(c) / 400.0;
  double ss = 0.0;
  for (auto c : est.counts) ss += std::pow(static_cast<double>(c) - mean, 2);
  const double s = std::sqrt(ss / 399.0);
  CHECK(est.mean_recovered == doctest::Approx(mean).epsilon(1e-12));
  CHECK(est.std_dev == doctest::Approx(s).epsilon(1e-12));
  CHECK(est.ci_low == doctest::Approx(mean - 1.96 * s / 20.0).epsilon(1e-12));
  CHECK(est.ci_high == doctest::Approx(mean + 1.96 * s / 20.0).epsilon(1e-12));
  CHECK(est.trials == 400);
  CHECK(est.dataset_size == 30);
  CHECK(est.num_classes == 2);
}

TEST_CASE("interval narrows with more trials") {
  const auto ds = testing::random_feature_dataset(100, 2, 3, 33);
  const auto a = estimate_capacity(testing::ConstantLearner{}, ds, {100, 1, 1});
  const auto b = estimate_capacity(testing::ConstantLearner{}, ds, {1600, 1, 1});
  const double wa = a.ci_high - a.ci_low, wb = b.ci_high - b.ci_low;
  CHECK(wb < wa);
  CHECK(wa / wb == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("recorder is deterministic across thread counts") {
  const auto& iris = builtin_iris();
  const auto spec = ClassifierSpec::parse("random_forest");
  const auto a = estimate_capacity(spec, iris, {40, 9, 1});
  const auto b = estimate_capacity(spec, iris, {40, 9, 3});
  CHECK(a.counts == b.counts);
  CHECK(trial_counts_csv(a) == trial_counts_csv(b));
  CHECK(capacity_json(a, spec.to_string()) == capacity_json(b, spec.to_string()));
}

TEST_CASE("recorder input checks and formats") {
  const auto ds = testing::random_feature_dataset(10, 1, 2, 34);
  CHECK_THROWS_AS(estimate_capacity(testing::ConstantLearner{}, ds, {1, 0, 1}), ArgumentError);
  CHECK_THROWS_AS(chance_baseline(0, 3), ArgumentError);
  const auto est = estimate_capacity(testing::ConstantLearner{}, ds, {3, 0, 1});
  const auto csv = trial_counts_csv(est);
  CHECK(csv.rfind("trial,count\n0,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  const auto json = capacity_json(est, "x");
  for (const char* key : {"mean_recovered", "std_dev", "ci_low", "ci_high", "trials"}) {
    CHECK(json.find(key) != std::string::npos);
  }
}

TEST_CASE("record_trial counts matches on the training rows") {
  const auto ds = testing::random_feature_dataset(50, 2, 2, 35);
  Rng a(3), b(3);
  const auto n = record_trial(testing::ConstantLearner{}, ds, a);
  const auto labels = random_labels(ds, b);
  CHECK(n == static_cast<std::size_t>(std::count(labels.labels().begin(), labels.labels().end(), 0)));
}
