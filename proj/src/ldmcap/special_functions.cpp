#include "ldmcap/special_functions.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "ldmcap/error.hpp"

namespace ldmcap {
namespace {

// Below this the recurrences shift the argument up before the asymptotic
// series is applied. Ten series terms leave < 1e-15 truncation error at 6.
constexpr double kShift = 6.0;

void require_positive(double x, const char* fn) {
  if (!(x > 0.0)) {
    throw DomainError(std::string(fn) + ": argument must be > 0, got " + std::to_string(x));
  }
}

struct DoubleDouble {
  double hi;
  double lo;
};

DoubleDouble two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

DoubleDouble add(DoubleDouble a, DoubleDouble b) {
  DoubleDouble s = two_sum(a.hi, b.hi);
  s.lo += a.lo + b.lo;
  return two_sum(s.hi, s.lo);
}

DoubleDouble mul(double a, DoubleDouble b) {
  const double p = a * b.hi;
  const double e = std::fma(a, b.hi, -p);
  return two_sum(p, e + a * b.lo);
}

// log(x) with ~1e-16 absolute error carried in the low word.
DoubleDouble log_dd(double x) {
  constexpr double kLn2Hi = 0x1.62e42fefa39efp-1;
  constexpr double kLn2Lo = 0x1.abc9e3b39803fp-56;
  int e = 0;
  double m = std::frexp(x, &e);  // m in [0.5, 1)
  if (m < 0.70710678118654752) {
    m *= 2.0;
    --e;
  }
  const double fe = static_cast<double>(e);
  const double p = fe * kLn2Hi;
  DoubleDouble r{p, std::fma(fe, kLn2Hi, -p)};
  r = add(r, two_sum(fe * kLn2Lo, std::log(m)));
  return r;
}

// B_2k / (2k (2k-1)), k = 1..10
constexpr std::array<double, 10> kStirlingLogGamma = {
    1.0 / 12.0,       -1.0 / 360.0,          1.0 / 1260.0,       -1.0 / 1680.0,
    1.0 / 1188.0,     -691.0 / 360360.0,     1.0 / 156.0,        -3617.0 / 122400.0,
    43867.0 / 244188.0, -174611.0 / 125400.0};

// B_2k / (2k), k = 1..10
constexpr std::array<double, 10> kStirlingDigamma = {
    1.0 / 12.0,  -1.0 / 120.0,     1.0 / 252.0,          -1.0 / 240.0,        1.0 / 132.0,
    -691.0 / 32760.0, 1.0 / 12.0, -3617.0 / 8160.0, 43867.0 / 14364.0, -174611.0 / 6600.0};

// B_2k, k = 1..10
constexpr std::array<double, 10> kBernoulli = {
    1.0 / 6.0,  -1.0 / 30.0, 1.0 / 42.0,         -1.0 / 30.0,       5.0 / 66.0,
    -691.0 / 2730.0, 7.0 / 6.0, -3617.0 / 510.0, 43867.0 / 798.0, -174611.0 / 330.0};

// Horner in w = 1/z^2 over coefficients c_k w^(k-1), highest order first.
template <std::size_t N>
double series(const std::array<double, N>& c, double w) {
  double acc = 0.0;
  for (std::size_t k = N; k-- > 0;) acc = acc * w + c[k];
  return acc;
}

double log_gamma_asymptotic(double z) {
  constexpr DoubleDouble kHalfLog2Pi{0.9189385332046728, -3.8782941580672414e-17};
  const double inv = 1.0 / z;
  const double tail = inv * series(kStirlingLogGamma, inv * inv);
  // (z - 0.5) is exact for z < 2^52.
  DoubleDouble r = mul(z - 0.5, log_dd(z));
  r = add(r, DoubleDouble{-z, 0.0});
  r = add(r, kHalfLog2Pi);
  r = add(r, DoubleDouble{tail, 0.0});
  return r.hi + r.lo;
}

}  // namespace

double log_gamma(double x) {
  require_positive(x, "log_gamma");
  if (std::isinf(x)) return x;
  if (x >= kShift) return log_gamma_asymptotic(x);
  // Gamma(x) = Gamma(x + k) / (x (x+1) ... (x+k-1))
  double product = 1.0;
  double z = x;
  while (z < kShift) {
    product *= z;
    z += 1.0;
  }
  return log_gamma_asymptotic(z) - std::log(product);
}

double digamma(double x) {
  require_positive(x, "digamma");
  if (std::isinf(x)) return x;
  double shift = 0.0;
  while (x < kShift) {
    shift += 1.0 / x;
    x += 1.0;
  }
  const double w = 1.0 / (x * x);
  return std::log(x) - 0.5 / x - w * series(kStirlingDigamma, w) - shift;
}

double trigamma(double x) {
  require_positive(x, "trigamma");
  if (std::isinf(x)) return 0.0;
  double shift = 0.0;
  while (x < kShift) {
    shift += 1.0 / (x * x);
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double w = inv * inv;
  return shift + inv + 0.5 * w + inv * w * series(kBernoulli, w);
}

double inverse_digamma(double y) {
  if (std::isnan(y)) throw DomainError("inverse_digamma: NaN argument");
  if (y == std::numeric_limits<double>::infinity()) return y;
  if (y == -std::numeric_limits<double>::infinity()) return 0.0;

  double x = y >= -2.22 ? std::exp(y) + 0.5 : -1.0 / (y + kEulerGamma);
  for (int it = 0; it < 100; ++it) {
    const double step = (digamma(x) - y) / trigamma(x);
    double next = x - step;
    // psi is concave, so Newton can only overshoot to the left.
    if (!(next > 0.0)) next = 0.5 * x;
    const double change = std::abs(next - x);
    x = next;
    if (change <= 4.0 * std::numeric_limits<double>::epsilon() * x) break;
  }
  return x;
}

}  // namespace ldmcap
