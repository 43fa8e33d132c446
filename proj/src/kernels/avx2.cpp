// Compiled with -mavx2 -mfma. Only reached after a runtime CPU check.
#include <immintrin.h>

#include <cstddef>

namespace gateforge::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

// Two complex numbers per register: [r0 i0 r1 i1].
// Accumulates a_r*b_r and a_i*b_i lane-wise into `prod`, the cross terms into
// `cross` after swapping the b pairs; the real part is the alternating sum of
// `prod`, the imaginary part the full sum of `cross`.
void dotu(const double* a, const double* b, std::size_t n, double* out) {
  __m256d prod = _mm256_setzero_pd();
  __m256d cross = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d va = _mm256_loadu_pd(a + 2 * k);
    const __m256d vb = _mm256_loadu_pd(b + 2 * k);
    prod = _mm256_fmadd_pd(va, vb, prod);
    cross = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0b0101), cross);
  }
  const __m256d sign = _mm256_setr_pd(1.0, -1.0, 1.0, -1.0);
  double re = hsum(_mm256_mul_pd(prod, sign));
  double im = hsum(cross);
  for (; k < n; ++k) {
    const double ar = a[2 * k], ai = a[2 * k + 1];
    const double br = b[2 * k], bi = b[2 * k + 1];
    re += ar * br - ai * bi;
    im += ar * bi + ai * br;
  }
  out[0] = re;
  out[1] = im;
}

void axpy_real(double alpha, const double* x, double* y, std::size_t n) {
  const std::size_t m = 2 * n;
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t k = 0;
  for (; k + 4 <= m; k += 4) {
    const __m256d vy = _mm256_loadu_pd(y + k);
    _mm256_storeu_pd(y + k, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + k), vy));
  }
  for (; k < m; ++k) y[k] += alpha * x[k];
}

double norm_sq(const double* x, std::size_t n) {
  const std::size_t m = 2 * n;
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= m; k += 4) {
    const __m256d v = _mm256_loadu_pd(x + k);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double s = hsum(acc);
  for (; k < m; ++k) s += x[k] * x[k];
  return s;
}

}  // namespace gateforge::kernels::avx2
