#include "ldmcap/kernels.hpp"

namespace ldmcap::kernels {
namespace {

void scale_scalar(const double* src, double s, double* dst, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = s * src[i];
}

void add_squared_diff_scalar(const double* column, double q, double* acc, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double d = column[i] - q;
    acc[i] += d * d;
  }
}

double sum_scalar(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i];
  return s;
}

double add_constant_and_sum_scalar(double* x, double c, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    x[i] += c;
    s += x[i];
  }
  return s;
}

double max_value_scalar(const double* x, std::size_t n) {
  double m = x[0];
  for (std::size_t i = 1; i < n; ++i) m = x[i] > m ? x[i] : m;
  return m;
}

constexpr KernelTable kScalar{Isa::scalar,   "scalar",   scale_scalar,
                              add_squared_diff_scalar, sum_scalar,
                              add_constant_and_sum_scalar, max_value_scalar};

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

}  // namespace ldmcap::kernels
