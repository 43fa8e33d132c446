#pragma once

// Inner loops over interleaved complex<double> buffers. Every kernel has a
// portable scalar reference and, on x86-64, an AVX2/FMA variant picked at
// runtime. The signatures take raw doubles so the AVX2 translation unit
// never instantiates shared inline code with wider instructions.

#include <complex>
#include <cstddef>
#include <string_view>

namespace gateforge::kernels {

struct KernelTable {
  std::string_view name;
  // out[0] + i out[1] = sum_k a_k b_k  (no conjugation), n complex entries
  void (*dotu)(const double* a, const double* b, std::size_t n, double* out);
  // y_k += alpha x_k for real alpha, n complex entries
  void (*axpy_real)(double alpha, const double* x, double* y, std::size_t n);
  // sum_k |x_k|^2, n complex entries
  double (*norm_sq)(const double* x, std::size_t n);
};

const KernelTable& scalar_table();

/// nullptr when the AVX2 variant is not compiled in or the CPU lacks
/// AVX2+FMA.
const KernelTable* avx2_table();

/// The table used by the library. Chosen once: GATEFORGE_KERNELS=scalar|avx2
/// forces a variant, otherwise the widest supported one wins.
const KernelTable& active();

inline std::complex<double> dotu(const std::complex<double>* a,
                                 const std::complex<double>* b, std::size_t n) {
  double out[2];
  active().dotu(reinterpret_cast<const double*>(a),
                reinterpret_cast<const double*>(b), n, out);
  return {out[0], out[1]};
}

inline void axpy_real(double alpha, const std::complex<double>* x,
                      std::complex<double>* y, std::size_t n) {
  active().axpy_real(alpha, reinterpret_cast<const double*>(x),
                     reinterpret_cast<double*>(y), n);
}

inline double norm_sq(const std::complex<double>* x, std::size_t n) {
  return active().norm_sq(reinterpret_cast<const double*>(x), n);
}

}  // namespace gateforge::kernels
