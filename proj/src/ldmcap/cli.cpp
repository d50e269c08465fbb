#include "ldmcap/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ldmcap/dirichlet.hpp"
#include "ldmcap/error.hpp"
#include "ldmcap/ldm.hpp"
#include "ldmcap/recorder.hpp"

namespace ldmcap::cli {
namespace {

struct LdmRun {
  std::optional<LDMatrix> first_ldm;
  std::optional<FitReport> first_fit;
  std::vector<double> entropies;
  std::size_t converged = 0;

  double average_entropy() const {
    return std::accumulate(entropies.begin(), entropies.end(), 0.0) /
           static_cast<double>(entropies.size());
  }
};

LdmRun run_ldm(const ClassifierSpec& spec, const LabeledDataset& ds, const RunConfig& config) {
  LdmRun run;
  const auto learner = make_learner(spec.resolved(SpecContext::ldm));
  for (std::size_t r = 0; r < config.repeats; ++r) {
    LdmOptions opt{config.columns, config.holdout, repeat_seed(config.seed, r), config.threads};
    auto ldm = build_ldm(*learner, ds, opt);
    auto report = fit_dirichlet(ldm.column_vectors());
    run.entropies.push_back(dirichlet_entropy(report.params));
    if (report.converged) ++run.converged;
    if (r == 0) {
      run.first_ldm.emplace(std::move(ldm));
      run.first_fit.emplace(std::move(report));
    }
  }
  return run;
}

CapacityEstimate run_record(const ClassifierSpec& spec, const LabeledDataset& ds,
                            const RunConfig& config) {
  return estimate_capacity(spec, ds, RecorderOptions{config.trials, config.seed, config.threads});
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path.string());
  f << text;
  if (!f) throw IoError("write failed: " + path.string());
}

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::size_t spec_width(const RunConfig& config) {
  std::size_t w = 4;
  for (const auto& s : config.specs) w = std::max(w, s.to_string().size());
  return w + 2;
}

void validate(const RunConfig& config, bool needs_ldm, bool needs_record) {
  if (config.specs.empty()) throw ArgumentError("at least one --spec is required");
  if (config.holdout < 1) throw ArgumentError("--holdout must be >= 1");
  if (needs_ldm && config.columns < 2) throw ArgumentError("--k must be >= 2");
  if (needs_ldm && config.repeats < 1) throw ArgumentError("--repeats must be >= 1");
  if (needs_record && config.trials < 2) throw ArgumentError("--trials must be >= 2");
}

template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const CapacityLimitError& e) {
    err << "error: " << e.what() << "\n";
    return kCapacityLimit;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsageOrDataError;
  }
}

}  // namespace

LabeledDataset load_dataset(const std::string& source) {
  if (source == "iris") return builtin_iris();
  if (source.rfind("csv:", 0) == 0) {
    const auto rest = source.substr(4);
    const auto colon = rest.rfind(':');
    if (colon == std::string::npos || colon == 0) {
      throw ArgumentError("dataset '" + source + "': expected csv:PATH:LABELCOL");
    }
    std::size_t column = 0;
    const auto digits = rest.substr(colon + 1);
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), column);
    if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
      throw ArgumentError("dataset '" + source + "': bad label column '" + digits + "'");
    }
    return load_csv(rest.substr(0, colon), column);
  }
  throw ArgumentError("unknown dataset '" + source + "' (iris or csv:PATH:LABELCOL)");
}

std::uint64_t repeat_seed(std::uint64_t master, std::size_t repeat) {
  return derive_seed(master, "cli.repeat", repeat);
}

int cmd_ldm(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate(config, true, false);
    const auto ds = load_dataset(config.dataset);
    labeling_count(ds.num_classes(), config.holdout);
    std::filesystem::create_directories(config.out_dir);

    const auto w = spec_width(config);
    out << pad("spec", w) << pad("avg_entropy", 18) << "converged\n";
    for (const auto& spec : config.specs) {
      const auto run = run_ldm(spec, ds, config);
      const auto slug = spec.slug();

      auto j = nlohmann::ordered_json::parse(fit_report_json(*run.first_fit));
      j["spec"] = spec.resolved(SpecContext::ldm).to_string();
      j["num_classes"] = ds.num_classes();
      j["holdout_size"] = config.holdout;
      j["columns"] = config.columns;
      j["seed"] = config.seed;
      j["repeats"] = config.repeats;
      j["repeat_entropies"] = run.entropies;
      j["converged_repeats"] = run.converged;
      j["average_entropy"] = run.average_entropy();
      write_text(config.out_dir / (slug + ".json"), j.dump(2) + "\n");
      write_ldm_csv(*run.first_ldm, config.out_dir / (slug + ".csv"));
      render_pgm(*run.first_ldm, HeatmapConfig{config.scale}, config.out_dir / (slug + ".pgm"));

      out << pad(spec.to_string(), w) << pad(fmt("%.4f", run.average_entropy()), 18)
          << run.converged << "/" << config.repeats << "\n";
    }
    return static_cast<int>(kSuccess);
  });
}

int cmd_record(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate(config, false, true);
    const auto ds = load_dataset(config.dataset);
    std::filesystem::create_directories(config.out_dir);

    const auto w = spec_width(config);
    out << pad("spec", w) << pad("mean", 12) << pad("ci_low", 12) << "ci_high\n";
    for (const auto& spec : config.specs) {
      const auto est = run_record(spec, ds, config);
      const auto slug = spec.slug();
      write_text(config.out_dir / (slug + "_record.json"),
                 capacity_json(est, spec.resolved(SpecContext::recorder).to_string()) + "\n");
      write_text(config.out_dir / (slug + "_trials.csv"), trial_counts_csv(est));
      out << pad(spec.to_string(), w) << pad(fmt("%.2f", est.mean_recovered), 12)
          << pad(fmt("%.2f", est.ci_low), 12) << fmt("%.2f", est.ci_high) << "\n";
    }
    return static_cast<int>(kSuccess);
  });
}

int cmd_compare(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.specs.size() < 2) {
    err << "usage: compare needs at least two --spec options\n";
    return kUsageOrDataError;
  }
  return guarded(err, [&] {
    validate(config, true, true);
    const auto ds = load_dataset(config.dataset);
    labeling_count(ds.num_classes(), config.holdout);
    std::filesystem::create_directories(config.out_dir);

    struct Row {
      std::string spec;
      double entropy;
      CapacityEstimate est;
    };
    std::vector<Row> rows;
    for (const auto& spec : config.specs) {
      rows.push_back({spec.to_string(), run_ldm(spec, ds, config).average_entropy(),
                      run_record(spec, ds, config)});
    }
    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
      return a.est.mean_recovered > b.est.mean_recovered;
    });

    std::string csv = "spec,avg_ldm_entropy,recorder_mean,ci_low,ci_high\n";
    const auto w = spec_width(config);
    out << pad("spec", w) << pad("avg_entropy", 16) << pad("capacity", 12) << "95% CI\n";
    for (const auto& r : rows) {
      csv += r.spec + "," + fmt("%.17g", r.entropy) + "," + fmt("%.17g", r.est.mean_recovered) +
             "," + fmt("%.17g", r.est.ci_low) + "," + fmt("%.17g", r.est.ci_high) + "\n";
      out << pad(r.spec, w) << pad(fmt("%.2f", r.entropy), 16)
          << pad(fmt("%.2f", r.est.mean_recovered), 12) << "[" << fmt("%.2f", r.est.ci_low) << ", "
          << fmt("%.2f", r.est.ci_high) << "]\n";
    }
    write_text(config.out_dir / "compare.csv", csv);
    return static_cast<int>(kSuccess);
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Estimate classifier capacity with labeling distribution matrices and label recorders",
               "ldmcap"};
  app.require_subcommand(1);

  RunConfig config;
  std::vector<std::string> spec_texts;
  std::string out_dir = ".";
  std::string scale = "linear";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--dataset", config.dataset, "iris or csv:PATH:LABELCOL")->capture_default_str();
    sub->add_option("--spec", spec_texts, "classifier spec, e.g. knn:k=3 (repeatable)")->required();
    sub->add_option("--k", config.columns, "LDM columns (label-permuted training sets)")->capture_default_str();
    sub->add_option("--holdout", config.holdout, "holdout size N'")->capture_default_str();
    sub->add_option("--trials", config.trials, "label-recorder trials")->capture_default_str();
    sub->add_option("--repeats", config.repeats, "LDM repeats averaged per spec")->capture_default_str();
    sub->add_option("--seed", config.seed, "master seed")->capture_default_str();
    sub->add_option("--out", out_dir, "output directory")->capture_default_str();
    sub->add_option("--scale", scale, "heatmap scale: linear or log")->capture_default_str();
    sub->add_option("--threads", config.threads, "worker threads (0 = all cores)")->capture_default_str();
  };
  auto* ldm = app.add_subcommand("ldm", "LDM entropy per classifier");
  auto* record = app.add_subcommand("record", "label-recorder capacity per classifier");
  auto* compare = app.add_subcommand("compare", "both pipelines, one combined table");
  add_common(ldm);
  add_common(record);
  add_common(compare);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kUsageOrDataError;
  }

  try {
    for (const auto& t : spec_texts) config.specs.push_back(ClassifierSpec::parse(t));
    config.scale = parse_heatmap_scale(scale);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsageOrDataError;
  }
  config.out_dir = out_dir;

  if (ldm->parsed()) return cmd_ldm(config, out, err);
  if (record->parsed()) return cmd_record(config, out, err);
  return cmd_compare(config, out, err);
}

}  // namespace ldmcap::cli
