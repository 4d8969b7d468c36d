#pragma once

#include <cmath>

namespace zipfkit::kernels::detail {

// Neumaier's variant of Kahan summation: the correction term also captures
// the low-order bits of the running sum when an addend dominates it.
struct NeumaierSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) noexcept {
    const double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }

  double value() const noexcept { return sum + comp; }
};

}  // namespace zipfkit::kernels::detail
