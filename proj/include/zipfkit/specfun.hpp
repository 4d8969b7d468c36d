#pragma once
// Generalised and shifted harmonic partial sums, and Hurwitz zeta values with
// a certified truncation bound.

#include <cstdint>

namespace zipfkit {

struct SeriesValue {
  double value = 0.0;
  // Bound on |value - exact|: truncation half-width plus a summation
  // round-off allowance.
  double error_bound = 0.0;
  std::uint64_t terms = 0;
};

// sum_{r=1..n} r^(-alpha). Requires n >= 1, alpha > 0.
double harmonic(std::int64_t n, double alpha);

// sum_{r=1..n} (a + r)^(-alpha). Requires n >= 1, alpha > 0, a >= 0.
double shifted_harmonic(std::int64_t n, double alpha, double a);

// sum_{r=1..inf} (a + r)^(-alpha) for alpha > 1.
//
// The partial sum is taken to n terms and the remainder is bracketed by
//   int_{n+1}^inf (a+x)^(-alpha) dx <= sum_{r>n} (a+r)^(-alpha) <= int_{n}^inf (a+x)^(-alpha) dx;
// the bracket midpoint is added and its half-width reported. n is chosen so
// that error_bound <= tol. Throws DivergenceError for alpha <= 1 and
// ArgumentError when tol is below what double precision can certify.
SeriesValue hurwitz_zeta(double alpha, double a, double tol);

// Exact remainder integral int_{from}^inf (a+x)^(-alpha) dx, alpha > 1.
double power_tail_integral(double alpha, double a, double from);

}  // namespace zipfkit
