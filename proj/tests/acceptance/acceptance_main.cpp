// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.
// Usage: acceptance [work_dir]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>

#include "ldmcap/cli.hpp"
#include "ldmcap/dirichlet.hpp"
#include "ldmcap/ldm.hpp"
#include "ldmcap/recorder.hpp"
#include "ldmcap/special_functions.hpp"
#include "reference_values.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using namespace ldmcap;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

fs::path g_work;

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

Outcome flat_entropy() {
  double worst = 0.0;
  for (int m = 2; m <= 6; ++m) {
    double log_fact = 0.0;
    for (int i = 2; i < m; ++i) log_fact += std::log(static_cast<double>(i));
    const double h = dirichlet_entropy(DirichletParams(std::vector<double>(m, 1.0)));
    worst = std::max(worst, std::abs(h + log_fact));
  }
  return {worst <= 1e-9, fmt("max |H + log((m-1)!)| = %.3g over m=2..6", worst)};
}

// Marsaglia-Tsang, independent of std::gamma_distribution.
double oracle_gamma(double a, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> z;
  if (a < 1.0) return oracle_gamma(a + 1.0, rng) * std::pow(u(rng), 1.0 / a);
  const double d = a - 1.0 / 3.0, c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    const double x = z(rng);
    double v = 1.0 + c * x;
    if (v <= 0.0) continue;
    v = v * v * v;
    if (std::log(u(rng)) < 0.5 * x * x + d - d * v + d * std::log(v)) return d * v;
  }
}

Outcome mle_recovery() {
  double worst = 0.0;
  bool converged = true;
  std::uint64_t seed = 2024;
  for (const auto& truth : {std::vector<double>{2.0, 5.0}, std::vector<double>{1.0, 1.0, 1.0}}) {
    Rng rng(seed++);
    std::vector<std::vector<double>> cols(10000, std::vector<double>(truth.size()));
    for (auto& col : cols) {
      double t = 0.0;
      for (std::size_t j = 0; j < truth.size(); ++j) t += col[j] = oracle_gamma(truth[j], rng);
      for (double& v : col) v /= t;
    }
    const auto fit = fit_dirichlet(cols);
    converged &= fit.converged;
    for (std::size_t j = 0; j < truth.size(); ++j) {
      worst = std::max(worst, std::abs(fit.params.alpha()[j] - truth[j]) / truth[j]);
    }
  }
  return {converged && worst <= 0.05, fmt("max relative alpha error %.4f (limit 0.05)", worst)};
}

Outcome simplex_oracle() {
  double worst_raw = 0.0, worst_smoothed = 0.0;
  int cases = 0;
  for (int c = 2; c <= 3; ++c) {
    const auto ds = testing::random_feature_dataset(60, 3, c, 40 + static_cast<unsigned>(c));
    for (const auto& text : testing::all_family_specs()) {
      for (std::size_t n = 1; n <= 4; ++n) {
        Rng rng(derive_seed(7, text, n * 10 + static_cast<std::size_t>(c)));
        const auto split = split_train_holdout(random_labels(ds, rng), n, rng);
        const auto model = fit(ClassifierSpec::parse(text), split.train, rng);
        const auto pp = holdout_probabilities(*model, split.holdout_features);
        const auto oracle = testing::brute_force_labeling_products(pp);
        const auto raw = labeling_products(pp);
        const auto smoothed = simplex_vector(*model, split.holdout_features);
        double total = 0.0;
        for (double v : oracle) total += v + kSmoothingEpsilon;
        for (std::size_t i = 0; i < oracle.size(); ++i) {
          worst_raw = std::max(worst_raw, std::abs(raw[i] - oracle[i]));
          worst_smoothed = std::max(
              worst_smoothed, std::abs(smoothed[i] - (oracle[i] + kSmoothingEpsilon) / total));
        }
        ++cases;
      }
    }
  }
  return {worst_raw <= 1e-12 && worst_smoothed <= 1e-12,
          fmt("%g family/C/N' cases, max err %.3g raw, %.3g smoothed", cases, worst_raw,
              worst_smoothed)};
}

Outcome ridge_index() {
  const std::vector<Label> ridge{1, 0, 0, 0, 0};
  const std::size_t idx = labeling_to_index(ridge, 3);
  int bad = 0;
  for (std::size_t i = 0; i < 243; ++i) {
    bad += labeling_to_index(index_to_labeling(i, 3, 5), 3) != i;
  }
  return {idx == 81 && bad == 0,
          fmt("index((1,0,0,0,0)) = %g, %g round-trip failures over 243", double(idx), bad)};
}

Outcome memorization() {
  const auto ds = testing::random_feature_dataset(150, 4, 3, 55);
  std::string detail;
  bool ok = true;
  for (const char* text : {"knn:k=1", "decision_tree"}) {
    const auto est = estimate_capacity(ClassifierSpec::parse(text), ds, {100, 1, 0});
    const auto lo = *std::min_element(est.counts.begin(), est.counts.end());
    ok &= lo == 150 && est.std_dev == 0.0 && est.counts.size() == 100;
    detail += std::string(text) + fmt(" mean %.2f std %.2f min %g; ", est.mean_recovered,
                                      est.std_dev, double(lo));
  }
  return {ok, detail};
}

Outcome iris_recorder() {
  const auto& iris = builtin_iris();
  const RecorderOptions opts{1000, 0, 0};
  auto run = [&](const std::string& text) {
    return estimate_capacity(ClassifierSpec::parse(text), iris, opts);
  };
  const auto k1 = run("knn:k=1"), k3 = run("knn:k=3"), k5 = run("knn:k=5"), k10 = run("knn:k=10");
  bool ok = k1.mean_recovered >= 149.0 && k1.mean_recovered <= 150.0;
  ok &= k1.ci_low > k3.ci_high && k3.ci_low > k5.ci_high && k5.ci_low > k10.ci_high;
  std::string detail = fmt("knn K=1,3,5,10: %.2f > %.2f > %.2f > %.2f", k1.mean_recovered,
                           k3.mean_recovered, k5.mean_recovered, k10.mean_recovered);
  double lowest = 1e9;
  std::string lowest_name;
  for (const char* text : {"gaussian_nb", "decision_tree", "random_forest", "qda", "adaboost"}) {
    const auto e = run(text);
    const double floor = 50.0 - 3.0 * e.std_dev / std::sqrt(static_cast<double>(e.trials));
    ok &= e.mean_recovered >= floor;
    if (e.mean_recovered < lowest) {
      lowest = e.mean_recovered;
      lowest_name = text;
    }
  }
  detail += "; lowest family mean " + lowest_name + fmt(" %.2f (chance 50)", lowest);
  return {ok, detail};
}

Outcome entropy_ordering() {
  const auto& iris = builtin_iris();
  const LdmOptions opts{100, 5, 0, 0};
  auto entropy_of = [&](const LDMatrix& ldm, bool& converged) {
    const auto cols = ldm.column_vectors();
    const auto fit = fit_dirichlet(cols);
    converged = fit.converged;
    return dirichlet_entropy(fit.params);
  };
  bool cu = false, co = false;
  const double uniform = entropy_of(build_ldm(testing::UniformLearner{}, iris, opts), cu);
  const double onehot = entropy_of(build_ldm(ClassifierSpec::parse("knn:k=1"), iris, opts), co);
  return {uniform > onehot,
          fmt("uniform-output H = %.2f (fit converged %g), one-hot knn:k=1 H = %.2f (converged %g)",
              uniform, cu, onehot, co)};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Outcome determinism() {
  cli::RunConfig cfg;
  cfg.specs = {ClassifierSpec::parse("random_forest"), ClassifierSpec::parse("knn:k=3")};
  cfg.columns = 50;
  cfg.repeats = 3;
  cfg.trials = 200;
  cfg.seed = 11;
  const std::pair<const char*, unsigned> runs[] = {{"serial", 1}, {"serial_again", 1}, {"parallel", 4}};
  std::ostringstream sink;
  for (const auto& [name, threads] : runs) {
    cfg.out_dir = g_work / "determinism" / name;
    fs::remove_all(cfg.out_dir);
    fs::create_directories(cfg.out_dir);
    cfg.threads = threads;
    if (cli::cmd_ldm(cfg, sink, sink) != 0 || cli::cmd_record(cfg, sink, sink) != 0) {
      return {false, std::string("command failed: ") + sink.str()};
    }
  }
  int files = 0, mismatched = 0;
  for (const auto& entry : fs::directory_iterator(g_work / "determinism" / "serial")) {
    const auto ref = slurp(entry.path());
    for (const char* other : {"serial_again", "parallel"}) {
      mismatched += slurp(g_work / "determinism" / other / entry.path().filename()) != ref;
    }
    ++files;
  }
  return {files == 12 && mismatched == 0,
          fmt("%g artifacts x 3 runs (threads 1,1,4), %g mismatches", files, mismatched)};
}

Outcome special_accuracy() {
  double worst = 0.0;
  for (const auto& row : testref::kSweep) {
    worst = std::max(worst, std::abs(log_gamma(row.x) - row.lgamma));
    worst = std::max(worst, std::abs(digamma(row.x) - row.digamma));
  }
  double worst_rt = 0.0;
  for (int e = -4; e <= 8; ++e) {
    const double x = std::pow(10.0, e);
    worst_rt = std::max(worst_rt, std::abs(inverse_digamma(digamma(x)) - x) / std::max(1.0, x));
  }
  return {worst <= 1e-12 && worst_rt <= 1e-8,
          fmt("max abs err %.3g on 50 points, round trip %.3g (relative above 1)", worst, worst_rt)};
}

}  // namespace

int main(int argc, char** argv) {
  g_work = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "ldmcap_acceptance";
  fs::create_directories(g_work);

  struct Criterion {
    int id;
    const char* name;
    double time_limit_s;
    std::function<Outcome()> check;
  };
  const Criterion criteria[] = {
      {1, "flat Dirichlet entropy closed form", 1.0, flat_entropy},
      {2, "Dirichlet MLE recovery", 30.0, mle_recovery},
      {3, "simplex vector vs brute-force oracle", 60.0, simplex_oracle},
      {4, "labeling index ridge and round trip", 1e9, ridge_index},
      {5, "memorization oracle", 60.0, memorization},
      {6, "Iris recorder ordering and chance dominance", 600.0, iris_recorder},
      {7, "uniform-output entropy exceeds one-hot", 1e9, entropy_ordering},
      {8, "byte-identical reruns", 1e9, determinism},
      {9, "digamma/lgamma accuracy and inverse round trip", 1e9, special_accuracy},
  };

  int failures = 0;
  const auto suite_start = std::chrono::steady_clock::now();
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.time_limit_s;
    const bool pass = o.pass && in_time;
    failures += !pass;
    std::printf("[%s] %d. %s (%.2fs%s): %s\n", pass ? "PASS" : "FAIL", c.id, c.name, secs,
                in_time ? "" : ", over time limit", o.detail.c_str());
    std::fflush(stdout);
  }
  const double total =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - suite_start).count();
  std::printf("%d/%zu criteria passed in %.1fs\n", static_cast<int>(std::size(criteria)) - failures,
              std::size(criteria), total);
  return failures == 0 && total < 600.0 ? 0 : 1;
}
