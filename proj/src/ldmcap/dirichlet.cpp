#include "ldmcap/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include <json.hpp>

#include "ldmcap/error.hpp"
#include "ldmcap/special_functions.hpp"

namespace ldmcap {

DirichletParams::DirichletParams(std::vector<double> alpha) : alpha_(std::move(alpha)) {
  if (alpha_.empty()) throw ArgumentError("Dirichlet parameters must be non-empty");
  for (std::size_t j = 0; j < alpha_.size(); ++j) {
    if (!(alpha_[j] > 0.0) || !std::isfinite(alpha_[j])) {
      throw ArgumentError("alpha[" + std::to_string(j) + "] = " + std::to_string(alpha_[j]) +
                          " is not a finite positive number");
    }
  }
}

double DirichletParams::concentration() const noexcept {
  return std::accumulate(alpha_.begin(), alpha_.end(), 0.0);
}

FitReport fit_dirichlet_from_stats(std::span<const double> mean_log_p,
                                   std::span<const double> mean_p, double first_second_moment,
                                   const FitOptions& options) {
  const std::size_t m = mean_log_p.size();
  if (m < 2 || mean_p.size() != m) {
    throw ArgumentError("fit_dirichlet: need matching statistics of dimension >= 2");
  }

  // Moment matching on the first component:
  //   alpha0 = (E[p1] - E[p1^2]) / (E[p1^2] - E[p1]^2)
  // Zero sample variance (identical columns) has no finite answer; start from
  // alpha0 = m and let the iteration run away, reporting non-convergence.
  // A variance within rounding noise of E[p1^2] counts as zero; otherwise the
  // start lands near 1e16 where every step rounds away and the fit looks
  // converged.
  const double var = first_second_moment - mean_p[0] * mean_p[0];
  double alpha0 = (mean_p[0] - first_second_moment) / var;
  const double noise = 64.0 * std::numeric_limits<double>::epsilon() * first_second_moment;
  if (!(var > noise) || !std::isfinite(alpha0) || !(alpha0 > 0.0)) {
    alpha0 = static_cast<double>(m);
  }
  std::vector<double> alpha(m);
  for (std::size_t j = 0; j < m; ++j) alpha[j] = alpha0 * mean_p[j];

  int iter = 0;
  double delta = std::numeric_limits<double>::infinity();
  bool converged = false;
  while (iter < options.max_iter) {
    ++iter;
    const double psi_total = digamma(std::accumulate(alpha.begin(), alpha.end(), 0.0));
    delta = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double next = inverse_digamma(psi_total + mean_log_p[j]);
      if (!std::isfinite(next) || !(next > 0.0)) {
        throw NumericalError("fit_dirichlet: non-finite alpha[" + std::to_string(j) +
                             "] at iteration " + std::to_string(iter));
      }
      // Absolute step for alpha >= 1, relative below: LDM fits of confident
      // classifiers start with alphas near 1e-8, where any absolute
      // tolerance would stop the iteration immediately.
      delta = std::max(delta, std::abs(next - alpha[j]) / std::min(1.0, alpha[j]));
      alpha[j] = next;
    }
    if (delta <= options.tolerance) {
      converged = true;
      break;
    }
  }
  return FitReport{DirichletParams(std::move(alpha)), iter, converged, delta};
}

FitReport fit_dirichlet(SimplexColumns columns, const FitOptions& options) {
  if (columns.size() < 2) throw ArgumentError("fit_dirichlet: need at least 2 sample columns");
  const std::size_t m = columns.front().size();
  if (m < 2) throw ArgumentError("fit_dirichlet: simplex dimension must be >= 2");

  std::vector<double> mean_log(m, 0.0);
  std::vector<double> mean_p(m, 0.0);
  double first_sq = 0.0;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    const auto& col = columns[i];
    if (col.size() != m) throw ArgumentError("fit_dirichlet: columns differ in length");
    double total = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double p = col[j];
      if (!(p > 0.0)) {
        throw DomainError("fit_dirichlet: entry (" + std::to_string(j) + ", " +
                          std::to_string(i) + ") = " + std::to_string(p) +
                          " is not positive; smooth the samples first");
      }
      mean_log[j] += std::log(p);
      mean_p[j] += p;
      total += p;
    }
    if (std::abs(total - 1.0) > 1e-6) {
      throw ArgumentError("fit_dirichlet: column " + std::to_string(i) + " sums to " +
                          std::to_string(total));
    }
    first_sq += col[0] * col[0];
  }
  const double inv_k = 1.0 / static_cast<double>(columns.size());
  for (std::size_t j = 0; j < m; ++j) {
    mean_log[j] *= inv_k;
    mean_p[j] *= inv_k;
  }
  return fit_dirichlet_from_stats(mean_log, mean_p, first_sq * inv_k, options);
}

double dirichlet_entropy(const DirichletParams& params) {
  const auto& alpha = params.alpha();
  const double m = static_cast<double>(alpha.size());
  const double alpha0 = params.concentration();
  double log_beta = -log_gamma(alpha0);
  double weighted_psi = 0.0;
  for (double a : alpha) {
    log_beta += log_gamma(a);
    weighted_psi += (a - 1.0) * digamma(a);
  }
  return log_beta + (alpha0 - m) * digamma(alpha0) - weighted_psi;
}

std::vector<double> sample_dirichlet(const DirichletParams& params, Rng& rng) {
  std::vector<double> draw(params.dim());
  double total = 0.0;
  for (std::size_t j = 0; j < draw.size(); ++j) {
    std::gamma_distribution<double> gamma(params.alpha()[j], 1.0);
    draw[j] = gamma(rng);
    total += draw[j];
  }
  if (!(total > 0.0)) {
    throw NumericalError("sample_dirichlet: all gamma variates underflowed to zero");
  }
  for (double& v : draw) v /= total;
  return draw;
}

std::string fit_report_json(const FitReport& report) {
  nlohmann::ordered_json j;
  j["alpha"] = report.params.alpha();
  j["iterations"] = report.iterations;
  j["converged"] = report.converged;
  j["final_delta"] = report.final_delta;
  j["entropy"] = dirichlet_entropy(report.params);
  return j.dump(2);
}

}  // namespace ldmcap
