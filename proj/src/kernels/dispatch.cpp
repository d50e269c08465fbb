#include <cstdlib>
#include <string_view>

#include "ldmcap/kernels.hpp"

namespace ldmcap::kernels {
namespace {

bool cpu_has_avx2() noexcept {
#if (defined(__x86_64__) || defined(_M_X64)) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable& select() noexcept {
  const auto tables = available_tables();
  if (const char* env = std::getenv("LDMCAP_SIMD")) {
    const std::string_view want(env);
    for (const auto* t : tables) {
      if (t->name == want) return *t;
    }
  }
  return *tables.back();
}

}  // namespace

std::vector<const KernelTable*> available_tables() {
  std::vector<const KernelTable*> out{&scalar_table()};
  if (cpu_has_avx2()) {
    if (const auto* t = detail::avx2_table()) out.push_back(t);
  }
  if (const auto* t = detail::neon_table()) out.push_back(t);  // NEON is baseline on aarch64
  return out;
}

const KernelTable& active() noexcept {
  static const KernelTable& table = select();
  return table;
}

}  // namespace ldmcap::kernels
