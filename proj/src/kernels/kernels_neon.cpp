#include "ldmcap/kernels.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>

namespace ldmcap::kernels {
namespace {

void scale_neon(const double* src, double s, double* dst, std::size_t n) {
  const float64x2_t vs = vdupq_n_f64(s);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(dst + i, vmulq_f64(vs, vld1q_f64(src + i)));
  for (; i < n; ++i) dst[i] = s * src[i];
}

void add_squared_diff_neon(const double* column, double q, double* acc, std::size_t n) {
  const float64x2_t vq = vdupq_n_f64(q);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t d = vsubq_f64(vld1q_f64(column + i), vq);
    vst1q_f64(acc + i, vaddq_f64(vld1q_f64(acc + i), vmulq_f64(d, d)));
  }
  for (; i < n; ++i) {
    const double d = column[i] - q;
    acc[i] += d * d;
  }
}

double sum_neon(const double* x, std::size_t n) {
  float64x2_t a0 = vdupq_n_f64(0.0);
  float64x2_t a1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    a0 = vaddq_f64(a0, vld1q_f64(x + i));
    a1 = vaddq_f64(a1, vld1q_f64(x + i + 2));
  }
  double s = vaddvq_f64(vaddq_f64(a0, a1));
  for (; i < n; ++i) s += x[i];
  return s;
}

double add_constant_and_sum_neon(double* x, double c, std::size_t n) {
  const float64x2_t vc = vdupq_n_f64(c);
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t v = vaddq_f64(vld1q_f64(x + i), vc);
    vst1q_f64(x + i, v);
    acc = vaddq_f64(acc, v);
  }
  double s = vaddvq_f64(acc);
  for (; i < n; ++i) {
    x[i] += c;
    s += x[i];
  }
  return s;
}

double max_value_neon(const double* x, std::size_t n) {
  std::size_t i = 0;
  double m = x[0];
  if (n >= 2) {
    float64x2_t vm = vld1q_f64(x);
    for (i = 2; i + 2 <= n; i += 2) vm = vmaxq_f64(vm, vld1q_f64(x + i));
    m = vmaxvq_f64(vm);
  }
  for (; i < n; ++i) m = x[i] > m ? x[i] : m;
  return m;
}

constexpr KernelTable kNeon{Isa::neon,         "neon",   scale_neon,
                            add_squared_diff_neon, sum_neon,
                            add_constant_and_sum_neon, max_value_neon};

}  // namespace

namespace detail {
const KernelTable* neon_table() noexcept { return &kNeon; }
}  // namespace detail

}  // namespace ldmcap::kernels

#else

namespace ldmcap::kernels::detail {
const KernelTable* neon_table() noexcept { return nullptr; }
}  // namespace ldmcap::kernels::detail

#endif
