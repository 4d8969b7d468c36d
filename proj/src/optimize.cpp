#include "optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "zipfkit/error.hpp"

namespace zipfkit::optimize {

ScalarMinimum brent_minimize(const std::function<double(double)>& f, double lo, double hi,
                             double abs_tol, std::size_t max_evaluations) {
  if (!(lo <= hi)) throw ArgumentError("brent_minimize: empty interval");
  if (!(abs_tol > 0.0)) throw ArgumentError("brent_minimize: tolerance must be positive");

  constexpr double kGolden = 0.3819660112501051;  // (3 - sqrt 5) / 2
  constexpr double kEps = std::numeric_limits<double>::epsilon();

  double a = lo;
  double b = hi;
  double x = a + kGolden * (b - a);
  double w = x;
  double v = x;
  double fx = f(x);
  double fw = fx;
  double fv = fx;
  double d = 0.0;
  double e = 0.0;
  std::size_t evaluations = 1;

  while (evaluations < max_evaluations) {
    const double m = 0.5 * (a + b);
    const double tol1 = 2.0 * kEps * std::fabs(x) + 0.25 * abs_tol;
    const double tol2 = 2.0 * tol1;
    if (std::fabs(x - m) <= tol2 - 0.5 * (b - a)) break;

    bool golden = true;
    if (std::fabs(e) > tol1) {
      double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) {
        p = -p;
      } else {
        q = -q;
      }
      r = e;
      e = d;
      if (std::fabs(p) < std::fabs(0.5 * q * r) && p > q * (a - x) && p < q * (b - x)) {
        d = p / q;
        const double u = x + d;
        if (u - a < tol2 || b - u < tol2) d = (x < m) ? tol1 : -tol1;
        golden = false;
      }
    }
    if (golden) {
      e = (x < m) ? b - x : a - x;
      d = kGolden * e;
    }

    const double u = x + (std::fabs(d) >= tol1 ? d : (d > 0.0 ? tol1 : -tol1));
    const double fu = f(u);
    ++evaluations;

    if (fu <= fx) {
      if (u < x) {
        b = x;
      } else {
        a = x;
      }
      v = w, fv = fw;
      w = x, fw = fx;
      x = u, fx = fu;
    } else {
      if (u < x) {
        a = u;
      } else {
        b = u;
      }
      if (fu <= fw || w == x) {
        v = w, fv = fw;
        w = u, fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u, fv = fu;
      }
    }
  }
  return {x, fx, evaluations};
}

Bracket bracket_minimum(const std::function<double(double)>& f, double x0, double step, double lo,
                        double hi) {
  constexpr double kGrow = 1.618033988749895;
  x0 = std::clamp(x0, lo, hi);
  const double f0 = f(x0);
  const double xr = std::min(hi, x0 + step);
  const double xl = std::max(lo, x0 - step);
  const double fr = xr == x0 ? f0 : f(xr);
  const double fl = xl == x0 ? f0 : f(xl);
  if (fl >= f0 && fr >= f0) return {xl, xr};

  const double dir = fr < fl ? 1.0 : -1.0;
  double prev = x0;
  double cur = dir > 0 ? xr : xl;
  double fcur = dir > 0 ? fr : fl;
  double s = step;
  for (int i = 0; i < 200; ++i) {
    s *= kGrow;
    const double next = std::clamp(cur + dir * s, lo, hi);
    if (next == cur) break;  // reached a bound while still descending
    const double fnext = f(next);
    if (fnext >= fcur) return {std::min(prev, next), std::max(prev, next)};
    prev = cur;
    cur = next;
    fcur = fnext;
  }
  return {std::min(prev, cur), std::max(prev, cur)};
}

}  // namespace zipfkit::optimize
