#pragma once

// Data-parallel inner loops shared by the classifiers, the LDM builder and the
// heatmap renderer. Each kernel has a portable scalar reference and optional
// AVX2 / NEON variants; the variant is picked once at runtime.
//
// Elementwise kernels (scale, add_squared_diff) are bitwise identical across
// variants. Reductions (sum, add_constant_and_sum) reassociate and agree with
// the scalar reference to a few ulps. max_value is exact.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace ldmcap::kernels {

enum class Isa { scalar, avx2, neon };

struct KernelTable {
  Isa isa;
  std::string_view name;
  /// dst[i] = s * src[i]
  void (*scale)(const double* src, double s, double* dst, std::size_t n);
  /// acc[i] += (column[i] - q)^2
  void (*add_squared_diff)(const double* column, double q, double* acc, std::size_t n);
  double (*sum)(const double* x, std::size_t n);
  /// x[i] += c, returns the new sum of x
  double (*add_constant_and_sum)(double* x, double c, std::size_t n);
  /// largest element; n must be > 0
  double (*max_value)(const double* x, std::size_t n);
};

const KernelTable& scalar_table() noexcept;

/// Variants compiled in and supported by the running CPU, scalar first.
std::vector<const KernelTable*> available_tables();

/// Table used by the library. Chosen on first call: the best available
/// variant, unless LDMCAP_SIMD=scalar|avx2|neon names another available one.
const KernelTable& active() noexcept;

inline void scale(std::span<const double> src, double s, std::span<double> dst) noexcept {
  active().scale(src.data(), s, dst.data(), src.size());
}
inline void add_squared_diff(std::span<const double> column, double q,
                             std::span<double> acc) noexcept {
  active().add_squared_diff(column.data(), q, acc.data(), column.size());
}
inline double sum(std::span<const double> x) noexcept { return active().sum(x.data(), x.size()); }
inline double add_constant_and_sum(std::span<double> x, double c) noexcept {
  return active().add_constant_and_sum(x.data(), c, x.size());
}
inline double max_value(std::span<const double> x) noexcept {
  return active().max_value(x.data(), x.size());
}

namespace detail {
const KernelTable* avx2_table() noexcept;
const KernelTable* neon_table() noexcept;
}  // namespace detail

}  // namespace ldmcap::kernels
