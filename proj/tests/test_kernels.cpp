// Scalar and AVX2 kernels must agree; the scalar path is the reference.

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "support/oracles.hpp"
#include "zipfkit/error.hpp"
#include "zipfkit/kernels/kernels.hpp"

namespace zipfkit::kernels {
namespace {

const KernelTable& ref() { return scalar_table(); }

const KernelTable* simd() { return table_for(Isa::avx2); }

double rel_diff(double x, double y) { return std::fabs(x - y) / std::max(std::fabs(y), 1e-300); }

#define REQUIRE_SIMD()                                        \
  if (simd() == nullptr) GTEST_SKIP() << "AVX2 unavailable"

TEST(Kernels, ScalarTableIsAlwaysAvailable) {
  EXPECT_EQ(table_for(Isa::scalar), &scalar_table());
  EXPECT_EQ(isa_name(Isa::scalar), "scalar");
  EXPECT_EQ(isa_name(Isa::avx2), "avx2");
}

TEST(Kernels, SelectSwitchesActiveTable) {
  select(Isa::scalar);
  EXPECT_EQ(active().isa, Isa::scalar);
  select_auto();
  if (simd() != nullptr && std::getenv("ZIPFKIT_ISA") == nullptr) {
    EXPECT_EQ(active().isa, Isa::avx2);
  }
}

TEST(Kernels, ScalarPowerSumMatchesLongDoubleReference) {
  for (double alpha : {0.5, 1.0, 1.7, 3.0}) {
    for (double shift : {0.0, 0.5, 7.0}) {
      const double got = ref().shifted_power_sum(1, 5000, alpha, shift);
      const auto want = static_cast<double>(testing::reference_power_sum(5000, alpha, shift));
      EXPECT_LT(rel_diff(got, want), 1e-14) << alpha << ' ' << shift;
    }
  }
}

TEST(Kernels, LogMatchesStdLogAcrossMagnitudes) {
  REQUIRE_SIMD();
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> exponent(-300.0, 300.0);
  std::vector<double> in(4099);
  for (auto& x : in) x = std::pow(10.0, exponent(gen));
  in[0] = 1.0;
  in[1] = 0.7071067811865476;
  in[2] = 1.0000000000000002;
  std::vector<double> got(in.size());
  simd()->log_fill(in, got);
  for (std::size_t i = 0; i < in.size(); ++i) {
    const double want = std::log(in[i]);
    EXPECT_NEAR(got[i], want, 4e-16 * std::max(1.0, std::fabs(want))) << in[i];
  }
}

TEST(Kernels, PowerFillMatchesStdPow) {
  REQUIRE_SIMD();
  for (double alpha : {0.3, 1.0, 2.0, 9.5}) {
    for (double shift : {0.0, 1.0, 123.25}) {
      std::vector<double> got(1003);
      std::vector<double> want(1003);
      simd()->shifted_power_fill(got, 17, alpha, shift);
      ref().shifted_power_fill(want, 17, alpha, shift);
      for (std::size_t i = 0; i < got.size(); ++i) {
        // exp(-alpha log x) magnifies the log rounding by alpha log x.
        const double x = shift + static_cast<double>(17 + i);
        const double bound = 4e-16 * (2.0 + alpha * std::log(x));
        EXPECT_LT(rel_diff(got[i], want[i]), bound) << alpha << ' ' << shift << ' ' << i;
      }
    }
  }
}

TEST(Kernels, PowerSumVariantsAgree) {
  REQUIRE_SIMD();
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> alpha_dist(0.2, 6.0);
  std::uniform_real_distribution<double> shift_dist(0.0, 50.0);
  std::uniform_int_distribution<std::uint64_t> count_dist(0, 20000);
  for (int trial = 0; trial < 200; ++trial) {
    const double alpha = alpha_dist(gen);
    const double shift = shift_dist(gen);
    const std::uint64_t first = 1 + count_dist(gen);
    const std::uint64_t count = count_dist(gen);
    const double a = simd()->shifted_power_sum(first, count, alpha, shift);
    const double b = ref().shifted_power_sum(first, count, alpha, shift);
    if (count == 0) {
      EXPECT_EQ(a, 0.0);
      EXPECT_EQ(b, 0.0);
    } else {
      EXPECT_LT(rel_diff(a, b), 1e-13) << alpha << ' ' << shift << ' ' << first << ' ' << count;
    }
  }
}

TEST(Kernels, ExpUnderflowsToZeroInsteadOfGarbage) {
  REQUIRE_SIMD();
  std::vector<double> out(8);
  // (1 + r)^-400 underflows for r >= 6.
  simd()->shifted_power_fill(out, 1, 400.0, 1.0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    EXPECT_GE(out[i], 0.0);
    EXPECT_LE(out[i], std::pow(2.0, -399.0));
  }
}

TEST(Kernels, ReductionsAgreeOnRandomData) {
  REQUIRE_SIMD();
  std::mt19937_64 gen(3);
  std::normal_distribution<double> noise(0.0, 1.0);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 17u, 1000u, 4097u}) {
    std::vector<double> x(n);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = std::log(1.0 + static_cast<double>(i));
      y[i] = 5.0 - 1.2 * x[i] + 0.1 * noise(gen);
    }
    EXPECT_NEAR(simd()->sum(y), ref().sum(y), 1e-12 * (1.0 + std::fabs(ref().sum(y))));
    EXPECT_NEAR(simd()->dot(x, y), ref().dot(x, y), 1e-12 * (1.0 + std::fabs(ref().dot(x, y))));
    const CentredMoments a = simd()->centred_moments(x, y, 0.3, 1.1);
    const CentredMoments b = ref().centred_moments(x, y, 0.3, 1.1);
    EXPECT_NEAR(a.sxx, b.sxx, 1e-12 * (1.0 + b.sxx));
    EXPECT_NEAR(a.sxy, b.sxy, 1e-12 * (1.0 + std::fabs(b.sxy)));
    EXPECT_NEAR(a.syy, b.syy, 1e-12 * (1.0 + b.syy));
    const double ra = simd()->residual_ss(x, y, 5.0, -1.2);
    const double rb = ref().residual_ss(x, y, 5.0, -1.2);
    EXPECT_NEAR(ra, rb, 1e-12 * (1.0 + rb));

    std::vector<double> la(n), lb(n);
    simd()->shifted_log_fill(la, 1, 0.25);
    ref().shifted_log_fill(lb, 1, 0.25);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(la[i], lb[i], 4e-16 * std::max(1.0, lb[i]));
  }
}

TEST(Kernels, CompensatedSumRecoversCancellation) {
  // 1e16 + 1 - 1e16 loses the 1 in naive summation.
  const std::vector<double> x{1e16, 1.0, -1e16, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0};
  EXPECT_EQ(ref().sum(x), 7.0);
  if (simd() != nullptr) EXPECT_EQ(simd()->sum(x), 7.0);
}

TEST(Kernels, SelectUnavailableVariantThrows) {
  if (simd() != nullptr) GTEST_SKIP() << "AVX2 present";
  EXPECT_THROW(select(Isa::avx2), ArgumentError);
}

}  // namespace
}  // namespace zipfkit::kernels
