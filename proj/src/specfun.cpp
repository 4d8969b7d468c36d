#include "zipfkit/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "zipfkit/error.hpp"
#include "zipfkit/kernels/kernels.hpp"

namespace zipfkit {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr std::uint64_t kMaxZetaTerms = 10'000'000'000ULL;

void check_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw ArgumentError("alpha must be a positive finite number, got " + std::to_string(alpha));
  }
}

void check_shift(double a) {
  if (!(a >= 0.0) || !std::isfinite(a)) {
    throw ArgumentError("shift a must be a non-negative finite number, got " + std::to_string(a));
  }
}

}  // namespace

double harmonic(std::int64_t n, double alpha) { return shifted_harmonic(n, alpha, 0.0); }

double shifted_harmonic(std::int64_t n, double alpha, double a) {
  if (n < 1) throw ArgumentError("harmonic sum needs n >= 1, got " + std::to_string(n));
  check_alpha(alpha);
  check_shift(a);
  return kernels::active().shifted_power_sum(1, static_cast<std::uint64_t>(n), alpha, a);
}

double power_tail_integral(double alpha, double a, double from) {
  // (a+from)^(1-alpha) / (alpha-1)
  return std::exp((1.0 - alpha) * std::log(a + from)) / (alpha - 1.0);
}

SeriesValue hurwitz_zeta(double alpha, double a, double tol) {
  if (std::isnan(alpha) || alpha <= 1.0) {
    throw DivergenceError("zeta series diverges for alpha <= 1 (got " + std::to_string(alpha) + ")");
  }
  if (!std::isfinite(alpha)) throw ArgumentError("alpha must be finite");
  check_shift(a);
  if (!(tol > 0.0)) throw ArgumentError("tolerance must be positive");

  // Upper bound on the full sum, used for the round-off allowance.
  const double head = std::pow(a + 1.0, -alpha);
  const double upper_value = head + power_tail_integral(alpha, a, 1.0);

  // Truncation half-width <= (a+n)^(-alpha) / 2; aim for tol / 2 of it.
  const double needed = std::pow(tol, -1.0 / alpha) - a;
  if (!(needed <= static_cast<double>(kMaxZetaTerms))) {
    throw ArgumentError("tolerance " + std::to_string(tol) + " needs more than " +
                        std::to_string(kMaxZetaTerms) + " terms at alpha=" + std::to_string(alpha));
  }
  const auto n = static_cast<std::uint64_t>(std::max(1.0, std::ceil(needed)));

  // Per-term relative error of the power evaluation grows with |alpha log x|;
  // compensated summation adds about 2 eps of the total.
  const double rounding =
      (alpha * std::log(a + static_cast<double>(n)) + 8.0) * kEps * upper_value;
  if (rounding > 0.5 * tol) {
    throw ArgumentError("tolerance " + std::to_string(tol) +
                        " is below the attainable double-precision accuracy");
  }

  const double partial = kernels::active().shifted_power_sum(1, n, alpha, a);

  // Remainder bracket [int_{n+1}^inf, int_n^inf]; width computed without
  // cancellation as int_n^inf * (1 - ((a+n+1)/(a+n))^(1-alpha)).
  const double x = a + static_cast<double>(n);
  const double upper_tail = power_tail_integral(alpha, a, static_cast<double>(n));
  const double width = upper_tail * -std::expm1((1.0 - alpha) * std::log1p(1.0 / x));
  const double lower_tail = upper_tail - width;

  SeriesValue out;
  out.value = partial + 0.5 * (lower_tail + upper_tail);
  out.error_bound = 0.5 * width + rounding;
  out.terms = n;
  return out;
}

}  // namespace zipfkit
