// Scalar reference kernels. These define the expected results that the SIMD
// variants are tested against.

#include <cmath>
#include <cstddef>
#include <cstdint>

#include "kernels/compensated.hpp"
#include "kernels/variants.hpp"
#include "zipfkit/kernels/kernels.hpp"

namespace zipfkit::kernels::scalar {

using detail::NeumaierSum;

double shifted_power_sum(std::uint64_t first, std::uint64_t count, double alpha,
                         double shift) {
  NeumaierSum acc;
  for (std::uint64_t i = 0; i < count; ++i) {
    const double x = shift + static_cast<double>(first + i);
    acc.add(std::pow(x, -alpha));
  }
  return acc.value();
}

void shifted_power_fill(std::span<double> out, std::uint64_t first, double alpha,
                        double shift) {
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = std::pow(shift + static_cast<double>(first + i), -alpha);
  }
}

void shifted_log_fill(std::span<double> out, std::uint64_t first, double shift) {
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = std::log(shift + static_cast<double>(first + i));
  }
}

void log_fill(std::span<const double> in, std::span<double> out) {
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = std::log(in[i]);
}

double sum(std::span<const double> x) {
  NeumaierSum acc;
  for (double v : x) acc.add(v);
  return acc.value();
}

double dot(std::span<const double> x, std::span<const double> y) {
  NeumaierSum acc;
  for (std::size_t i = 0; i < x.size(); ++i) acc.add(x[i] * y[i]);
  return acc.value();
}

CentredMoments centred_moments(std::span<const double> x, std::span<const double> y,
                               double mean_x, double mean_y) {
  NeumaierSum sxx, sxy, syy;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mean_x;
    const double dy = y[i] - mean_y;
    sxx.add(dx * dx);
    sxy.add(dx * dy);
    syy.add(dy * dy);
  }
  return {sxx.value(), sxy.value(), syy.value()};
}

double residual_ss(std::span<const double> x, std::span<const double> y, double intercept,
                   double slope) {
  NeumaierSum acc;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - intercept - slope * x[i];
    acc.add(e * e);
  }
  return acc.value();
}

const KernelTable& table() noexcept {
  static const KernelTable t{Isa::scalar,     &shifted_power_sum, &shifted_power_fill,
                             &shifted_log_fill, &log_fill,         &sum,
                             &dot,              &centred_moments,  &residual_ss};
  return t;
}

}  // namespace zipfkit::kernels::scalar
