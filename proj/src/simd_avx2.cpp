#include "atm/simd.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define ATM_HAVE_AVX2_KERNELS 1
#include <immintrin.h>
#else
#define ATM_HAVE_AVX2_KERNELS 0
#endif

namespace atm::simd::avx2 {

#if ATM_HAVE_AVX2_KERNELS

bool compiled() { return true; }

// Only "avx2" is enabled, never "fma": the products and sums below must round
// exactly like the scalar reference.
__attribute__((target("avx2"))) void vecmat(const double* v, const double* m, double* out,
                                            std::size_t d) {
  const std::size_t wide = d - d % 4;
  for (std::size_t j = 0; j < wide; j += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t i = 0; i < d; ++i) {
      const double w = v[i];
      if (w == 0.0) continue;
      const __m256d prod = _mm256_mul_pd(_mm256_set1_pd(w), _mm256_loadu_pd(m + i * d + j));
      acc = _mm256_add_pd(acc, prod);
    }
    _mm256_storeu_pd(out + j, acc);
  }
  for (std::size_t j = wide; j < d; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      const double w = v[i];
      if (w == 0.0) continue;
      acc += w * m[i * d + j];
    }
    out[j] = acc;
  }
}

__attribute__((target("avx2"))) double dot(const double* a, const double* b, std::size_t n) {
  const std::size_t wide = n - n % 4;
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t i = 0; i < wide; i += 4) {
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double sum = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (std::size_t i = wide; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

__attribute__((target("avx2"))) void vmax(double* acc, const double* x, std::size_t n) {
  const std::size_t wide = n - n % 4;
  for (std::size_t i = 0; i < wide; i += 4) {
    // max_pd returns its second operand on ties, keeping acc's bits.
    const __m256d merged = _mm256_max_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(acc + i));
    _mm256_storeu_pd(acc + i, merged);
  }
  for (std::size_t i = wide; i < n; ++i) {
    if (x[i] > acc[i]) acc[i] = x[i];
  }
}

#else

bool compiled() { return false; }
void vecmat(const double* v, const double* m, double* out, std::size_t d) {
  scalar::vecmat(v, m, out, d);
}
double dot(const double* a, const double* b, std::size_t n) { return scalar::dot(a, b, n); }
void vmax(double* acc, const double* x, std::size_t n) { scalar::vmax(acc, x, n); }

#endif

}  // namespace atm::simd::avx2
