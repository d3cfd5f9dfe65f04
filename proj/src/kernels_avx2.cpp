// Built with -mavx2 -mfma; only reached after a runtime cpuid check.
#include <immintrin.h>

#include "vmb/kernels.hpp"

namespace vmb::kern {
namespace {

void axpy_v(std::size_t n, double a, const double* x, double* y) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256d y0 = _mm256_loadu_pd(y + i);
    __m256d y1 = _mm256_loadu_pd(y + i + 4);
    y0 = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), y0);
    y1 = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i + 4), y1);
    _mm256_storeu_pd(y + i, y0);
    _mm256_storeu_pd(y + i + 4, y1);
  }
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  for (; i < n; ++i) y[i] += a * x[i];
}

void axpy2_v(std::size_t n, double a0, double a1, const double* x, double* y) {
  const __m256d va = _mm256_setr_pd(a0, a1, a0, a1);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  for (; i + 1 < n; i += 2) {
    y[i] += a0 * x[i];
    y[i + 1] += a1 * x[i + 1];
  }
}

void vmul_v(std::size_t n, const double* a, const double* b, double* out) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

void cmul_v(std::size_t n, const double* a, const double* b, double* out) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(a + 2 * i);
    const __m256d vb = _mm256_loadu_pd(b + 2 * i);
    const __m256d br = _mm256_movedup_pd(vb);          // br br
    const __m256d bi = _mm256_permute_pd(vb, 0xF);     // bi bi
    const __m256d asw = _mm256_permute_pd(va, 0x5);    // ai ar
    // (ar*br - ai*bi, ai*br + ar*bi)
    _mm256_storeu_pd(out + 2 * i, _mm256_fmaddsub_pd(va, br, _mm256_mul_pd(asw, bi)));
  }
  for (; i < n; ++i) {
    const double ar = a[2 * i], ai = a[2 * i + 1];
    const double br = b[2 * i], bi = b[2 * i + 1];
    out[2 * i] = ar * br - ai * bi;
    out[2 * i + 1] = ar * bi + ai * br;
  }
}

double dot_v(std::size_t n, const double* x, const double* y) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
  alignas(32) double buf[4];
  _mm256_store_pd(buf, acc);
  double s = (buf[0] + buf[1]) + (buf[2] + buf[3]);
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

}  // namespace

namespace detail {
const Table avx2_table{axpy_v, axpy2_v, vmul_v, cmul_v, dot_v, Isa::avx2};
}

}  // namespace vmb::kern
