#include "atm/generators.hpp"
#include "atm/simd.hpp"
#include "atm/solvers.hpp"

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>

using namespace atm;

namespace {

/// Restores the process-wide kernel choice when a test ends.
struct IsaGuard {
  simd::Isa saved = simd::active().isa;
  ~IsaGuard() { simd::select(saved); }
};

std::vector<double> random_weights(gen::Rng& rng, std::size_t n, bool sparse) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = sparse && unit(rng) < 0.4 ? 0.0 : unit(rng);
  return v;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("scalar kernels follow their definitions") {
  const std::vector<double> v{0.5, 0.0, 0.5};
  const std::vector<double> m{1, 0, 0, 0, 1, 0, 0.25, 0.25, 0.5};
  std::vector<double> out(3);
  simd::scalar::vecmat(v.data(), m.data(), out.data(), 3);
  CHECK(out == std::vector<double>{0.625, 0.125, 0.25});
  CHECK(simd::scalar::dot(v.data(), out.data(), 3) == 0.5 * 0.625 + 0.5 * 0.25);
  std::vector<double> acc{0.1, 0.9, 0.3};
  simd::scalar::vmax(acc.data(), out.data(), 3);
  CHECK(acc == std::vector<double>{0.625, 0.9, 0.3});
}

TEST_CASE("avx2 kernels agree with the scalar reference") {
  if (!simd::cpu_supports(simd::Isa::avx2)) {
    MESSAGE("AVX2 unavailable on this CPU; equivalence not exercised");
    return;
  }
  gen::Rng rng(31337);
  for (std::size_t d = 1; d <= 37; ++d) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto v = random_weights(rng, d, trial % 2 == 0);
      const auto m = random_weights(rng, d * d, trial % 3 == 0);
      std::vector<double> ref(d), wide(d);
      simd::scalar::vecmat(v.data(), m.data(), ref.data(), d);
      simd::avx2::vecmat(v.data(), m.data(), wide.data(), d);
      CHECK(same_bits(ref, wide));

      auto acc_ref = random_weights(rng, d, false);
      auto acc_wide = acc_ref;
      simd::scalar::vmax(acc_ref.data(), ref.data(), d);
      simd::avx2::vmax(acc_wide.data(), ref.data(), d);
      CHECK(same_bits(acc_ref, acc_wide));

      const double dot_ref = simd::scalar::dot(v.data(), ref.data(), d);
      const double dot_wide = simd::avx2::dot(v.data(), ref.data(), d);
      CHECK(std::fabs(dot_ref - dot_wide) <= 4 * d * std::numeric_limits<double>::epsilon() * std::fabs(dot_ref));
    }
  }
}

TEST_CASE("kernel selection") {
  IsaGuard guard;
  CHECK(simd::select(simd::Isa::scalar));
  CHECK(simd::active().isa == simd::Isa::scalar);
  CHECK(simd::select(simd::Isa::avx2) == simd::cpu_supports(simd::Isa::avx2));
  CHECK(simd::to_string(simd::Isa::avx2) == "avx2");
}

TEST_CASE("float solvers give the same answers under every kernel set") {
  if (!simd::cpu_supports(simd::Isa::avx2)) return;
  IsaGuard guard;
  gen::Rng rng(4242);
  for (int trial = 0; trial < 40; ++trial) {
    const Instance inst = gen::random_float_instance(rng, 2 + trial % 6, 3, 5);
    simd::select(simd::Isa::scalar);
    const auto table_ref = mdp_value_table(inst.floating());
    const auto bnb_ref = branch_and_bound_solve(inst);
    const auto enum_ref = enumerate_solve(inst);
    simd::select(simd::Isa::avx2);
    const auto table_wide = mdp_value_table(inst.floating());
    const auto bnb_wide = branch_and_bound_solve(inst);
    const auto enum_wide = enumerate_solve(inst);

    for (std::size_t r = 0; r <= inst.horizon(); ++r) {
      auto a = table_ref.row(r), b = table_wide.row(r);
      CHECK(std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0);
    }
    // Enumeration never calls dot, so it matches bit for bit.
    CHECK(enum_ref.value.floating() == enum_wide.value.floating());
    CHECK(enum_ref.plan == enum_wide.plan);
    CHECK(std::fabs(bnb_ref.value.floating() - bnb_wide.value.floating()) <= 1e-12);
  }
}
