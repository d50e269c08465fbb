#pragma once

namespace ldmcap {

inline constexpr double kEulerGamma = 0.5772156649015329;

/// log Gamma(x) for x > 0. Stirling series evaluated in double-double
/// arithmetic after an upward recurrence shift; absolute error stays near one
/// ulp of the result across (0, 1e15]. Throws DomainError for x <= 0 or NaN.
double log_gamma(double x);

/// psi(x) = d/dx log Gamma(x), x > 0.
double digamma(double x);

/// psi'(x), x > 0.
double trigamma(double x);

/// Solves digamma(x) = y for x > 0 by Newton's method.
double inverse_digamma(double y);

}  // namespace ldmcap
