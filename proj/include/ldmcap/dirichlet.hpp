#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ldmcap/rng.hpp"

namespace ldmcap {

/// Concentration vector of a Dirichlet distribution; every entry finite and > 0.
class DirichletParams {
 public:
  /// Throws ArgumentError if alpha is empty or holds a non-positive or
  /// non-finite entry.
  explicit DirichletParams(std::vector<double> alpha);

  const std::vector<double>& alpha() const noexcept { return alpha_; }
  std::size_t dim() const noexcept { return alpha_.size(); }
  double concentration() const noexcept;  // sum of alpha

 private:
  std::vector<double> alpha_;
};

struct FitReport {
  DirichletParams params;
  int iterations = 0;
  bool converged = false;
  /// Largest component step on the last iteration, measured absolutely for
  /// alpha_j >= 1 and relative to alpha_j below that.
  double final_delta = 0.0;
};

struct FitOptions {
  double tolerance = 1e-7;
  int max_iter = 1000;
};

/// Samples as a set of simplex vectors of a common dimension m.
///
/// Column-major view: `columns[i]` is the i-th observed probability vector.
using SimplexColumns = std::span<const std::vector<double>>;

/// Maximum-likelihood Dirichlet fit by the fixed-point iteration
///   psi(alpha_j) <- psi(sum_k alpha_k) + mean_i log p_ij,
/// started from moment matching on the first component.
///
/// Requires at least two columns, strictly positive entries, and column sums
/// within 1e-6 of one. Throws DomainError on a non-positive entry,
/// ArgumentError on shape problems, NumericalError if an iterate becomes
/// non-finite. Hitting max_iter is not an error; `converged` is false.
FitReport fit_dirichlet(SimplexColumns columns, const FitOptions& options = {});

/// Same, from precomputed mean log-probabilities and moment-matching inputs.
FitReport fit_dirichlet_from_stats(std::span<const double> mean_log_p,
                                   std::span<const double> mean_p, double first_second_moment,
                                   const FitOptions& options = {});

/// Differential entropy (nats) of Dirichlet(alpha). Can be negative.
double dirichlet_entropy(const DirichletParams& params);

/// One draw: independent Gamma(alpha_j, 1) variates normalized by their sum.
std::vector<double> sample_dirichlet(const DirichletParams& params, Rng& rng);

/// {"alpha":[...],"iterations":..,"converged":..,"final_delta":..,"entropy":..}
std::string fit_report_json(const FitReport& report);

}  // namespace ldmcap
