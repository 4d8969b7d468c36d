#pragma once
// Data-parallel inner loops shared by the series, model and fitting code.
//
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant. The active table is chosen once at startup from the CPU features
// (override with ZIPFKIT_ISA=scalar|avx2). Variants agree to within a few
// ulps per term; they are not bit-identical, so results are reproducible per
// selected ISA.

#include <cstdint>
#include <span>
#include <string_view>

namespace zipfkit::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa) noexcept;

struct CentredMoments {
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
};

struct KernelTable {
  Isa isa;

  // Neumaier-compensated sum of (shift + r)^(-alpha) for r = first .. first+count-1.
  double (*shifted_power_sum)(std::uint64_t first, std::uint64_t count, double alpha,
                              double shift);

  // out[i] = (shift + first + i)^(-alpha)
  void (*shifted_power_fill)(std::span<double> out, std::uint64_t first, double alpha,
                             double shift);

  // out[i] = log(shift + first + i)
  void (*shifted_log_fill)(std::span<double> out, std::uint64_t first, double shift);

  // out[i] = log(in[i]); in[i] must be positive and finite.
  void (*log_fill)(std::span<const double> in, std::span<double> out);

  // Compensated sum and dot product.
  double (*sum)(std::span<const double> x);
  double (*dot)(std::span<const double> x, std::span<const double> y);

  // Centred second moments about (mean_x, mean_y), compensated.
  CentredMoments (*centred_moments)(std::span<const double> x, std::span<const double> y,
                                    double mean_x, double mean_y);

  // Compensated sum of (y - intercept - slope * x)^2.
  double (*residual_ss)(std::span<const double> x, std::span<const double> y,
                        double intercept, double slope);
};

const KernelTable& scalar_table() noexcept;

// nullptr when the variant was not compiled in or the CPU lacks the features.
const KernelTable* table_for(Isa isa) noexcept;

// Currently selected table.
const KernelTable& active() noexcept;

// Force a variant (tests, benchmarking). Throws ArgumentError if unavailable.
void select(Isa isa);

// Restore the automatic choice.
void select_auto() noexcept;

}  // namespace zipfkit::kernels
