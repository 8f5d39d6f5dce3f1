#include "atm/simd.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace atm::simd {

std::string_view to_string(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

namespace {

const KernelTable kScalar{Isa::scalar, &scalar::vecmat, &scalar::dot, &scalar::vmax};
const KernelTable kAvx2{Isa::avx2, &avx2::vecmat, &avx2::dot, &avx2::vmax};

const KernelTable* detect() {
  if (const char* forced = std::getenv("ATM_SIMD")) {
    std::string name(forced);
    if (name == "scalar") return &kScalar;
    if (name == "avx2" && cpu_supports(Isa::avx2)) return &kAvx2;
  }
  return cpu_supports(Isa::avx2) ? &kAvx2 : &kScalar;
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{detect()};
  return table;
}

}  // namespace

bool cpu_supports(Isa isa) {
  if (isa == Isa::scalar) return true;
#if defined(__x86_64__) || defined(_M_X64)
  return avx2::compiled() && __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable& table(Isa isa) { return isa == Isa::avx2 ? kAvx2 : kScalar; }

const KernelTable& active() { return *current().load(std::memory_order_acquire); }

bool select(Isa isa) {
  if (!cpu_supports(isa)) return false;
  current().store(&table(isa), std::memory_order_release);
  return true;
}

}  // namespace atm::simd
