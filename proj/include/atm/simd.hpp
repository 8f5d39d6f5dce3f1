#pragma once

// Double-precision inner loops of the float-mode solvers.
//
// Every kernel has a portable scalar reference and, on x86-64, an AVX2
// variant picked at runtime. `vecmat` and `vmax` are bit-identical across
// variants (same summation order, no fused multiply-add); `dot` reassociates
// its sum and agrees with the reference to rounding.

#include <cstddef>
#include <string_view>

namespace atm::simd {

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa);

struct KernelTable {
  Isa isa;
  /// out[j] = sum_i v[i] * m[i*d + j], accumulated in increasing i. Zero
  /// weights are skipped.
  void (*vecmat)(const double* v, const double* m, double* out, std::size_t d);
  double (*dot)(const double* a, const double* b, std::size_t n);
  /// acc[i] = max(acc[i], x[i])
  void (*vmax)(double* acc, const double* x, std::size_t n);
};

namespace scalar {
void vecmat(const double* v, const double* m, double* out, std::size_t d);
double dot(const double* a, const double* b, std::size_t n);
void vmax(double* acc, const double* x, std::size_t n);
}  // namespace scalar

namespace avx2 {
/// False when the binary was built for a non-x86 target.
bool compiled();
void vecmat(const double* v, const double* m, double* out, std::size_t d);
double dot(const double* a, const double* b, std::size_t n);
void vmax(double* acc, const double* x, std::size_t n);
}  // namespace avx2

bool cpu_supports(Isa isa);

/// Best supported table, unless ATM_SIMD=scalar|avx2 is set in the
/// environment or select() has been called.
const KernelTable& active();

const KernelTable& table(Isa isa);

/// Forces a kernel set. Returns false (and changes nothing) when the CPU
/// lacks it. Not thread-safe with concurrent solver runs.
bool select(Isa isa);

}  // namespace atm::simd
