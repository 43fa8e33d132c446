#include "gateforge/kernels/kernels.hpp"

namespace gateforge::kernels {
namespace {

void dotu_scalar(const double* a, const double* b, std::size_t n, double* out) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double ar = a[2 * k], ai = a[2 * k + 1];
    const double br = b[2 * k], bi = b[2 * k + 1];
    re += ar * br - ai * bi;
    im += ar * bi + ai * br;
  }
  out[0] = re;
  out[1] = im;
}

void axpy_real_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t k = 0; k < 2 * n; ++k) y[k] += alpha * x[k];
}

double norm_sq_scalar(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t k = 0; k < 2 * n; ++k) s += x[k] * x[k];
  return s;
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{"scalar", dotu_scalar, axpy_real_scalar,
                                 norm_sq_scalar};
  return table;
}

}  // namespace gateforge::kernels
