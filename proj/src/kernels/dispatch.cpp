#include <cstdlib>
#include <string_view>

#include "gateforge/kernels/kernels.hpp"

namespace gateforge::kernels {

#ifdef GATEFORGE_HAVE_AVX2_TU
namespace avx2 {
void dotu(const double* a, const double* b, std::size_t n, double* out);
void axpy_real(double alpha, const double* x, double* y, std::size_t n);
double norm_sq(const double* x, std::size_t n);
}  // namespace avx2
#endif

const KernelTable* avx2_table() {
#ifdef GATEFORGE_HAVE_AVX2_TU
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  }();
  static const KernelTable table{"avx2", avx2::dotu, avx2::axpy_real,
                                 avx2::norm_sq};
  return supported ? &table : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  static const KernelTable& chosen = []() -> const KernelTable& {
    const char* env = std::getenv("GATEFORGE_KERNELS");
    const std::string_view want = env ? env : "";
    if (want == "scalar") return scalar_table();
    if (const KernelTable* wide = avx2_table()) return *wide;
    return scalar_table();
  }();
  return chosen;
}

}  // namespace gateforge::kernels
