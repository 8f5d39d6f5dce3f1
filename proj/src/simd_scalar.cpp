#include "atm/simd.hpp"

namespace atm::simd::scalar {

void vecmat(const double* v, const double* m, double* out, std::size_t d) {
  for (std::size_t j = 0; j < d; ++j) out[j] = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    const double w = v[i];
    if (w == 0.0) continue;
    const double* row = m + i * d;
    for (std::size_t j = 0; j < d; ++j) out[j] += w * row[j];
  }
}

double dot(const double* a, const double* b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

void vmax(double* acc, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] > acc[i]) acc[i] = x[i];
  }
}

}  // namespace atm::simd::scalar
