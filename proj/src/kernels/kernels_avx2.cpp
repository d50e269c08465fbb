// Compiled with -mavx2. Only reached after a runtime CPU check in dispatch.cpp.
#include "ldmcap/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

namespace ldmcap::kernels {
namespace {

void scale_avx2(const double* src, double s, double* dst, std::size_t n) {
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(dst + i, _mm256_mul_pd(vs, _mm256_loadu_pd(src + i)));
  }
  for (; i < n; ++i) dst[i] = s * src[i];
}

void add_squared_diff_avx2(const double* column, double q, double* acc, std::size_t n) {
  const __m256d vq = _mm256_set1_pd(q);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(column + i), vq);
    // mul then add (no FMA) keeps results identical to the scalar loop
    _mm256_storeu_pd(acc + i, _mm256_add_pd(_mm256_loadu_pd(acc + i), _mm256_mul_pd(d, d)));
  }
  for (; i < n; ++i) {
    const double d = column[i] - q;
    acc[i] += d * d;
  }
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double sum_avx2(const double* x, std::size_t n) {
  __m256d a0 = _mm256_setzero_pd();
  __m256d a1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    a0 = _mm256_add_pd(a0, _mm256_loadu_pd(x + i));
    a1 = _mm256_add_pd(a1, _mm256_loadu_pd(x + i + 4));
  }
  for (; i + 4 <= n; i += 4) a0 = _mm256_add_pd(a0, _mm256_loadu_pd(x + i));
  double s = hsum(_mm256_add_pd(a0, a1));
  for (; i < n; ++i) s += x[i];
  return s;
}

double add_constant_and_sum_avx2(double* x, double c, std::size_t n) {
  const __m256d vc = _mm256_set1_pd(c);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_add_pd(_mm256_loadu_pd(x + i), vc);
    _mm256_storeu_pd(x + i, v);
    acc = _mm256_add_pd(acc, v);
  }
  double s = hsum(acc);
  for (; i < n; ++i) {
    x[i] += c;
    s += x[i];
  }
  return s;
}

double max_value_avx2(const double* x, std::size_t n) {
  std::size_t i = 0;
  double m = x[0];
  if (n >= 4) {
    __m256d vm = _mm256_loadu_pd(x);
    for (i = 4; i + 4 <= n; i += 4) vm = _mm256_max_pd(vm, _mm256_loadu_pd(x + i));
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, vm);
    m = lanes[0];
    for (int k = 1; k < 4; ++k) m = lanes[k] > m ? lanes[k] : m;
  }
  for (; i < n; ++i) m = x[i] > m ? x[i] : m;
  return m;
}

constexpr KernelTable kAvx2{Isa::avx2,         "avx2",   scale_avx2,
                            add_squared_diff_avx2, sum_avx2,
                            add_constant_and_sum_avx2, max_value_avx2};

}  // namespace

namespace detail {
const KernelTable* avx2_table() noexcept { return &kAvx2; }
}  // namespace detail

}  // namespace ldmcap::kernels

#else

namespace ldmcap::kernels::detail {
const KernelTable* avx2_table() noexcept { return nullptr; }
}  // namespace ldmcap::kernels::detail

#endif
