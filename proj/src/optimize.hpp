#pragma once
// Derivative-free scalar minimisation used by the estimators.

#include <cstddef>
#include <functional>

namespace zipfkit::optimize {

struct ScalarMinimum {
  double x;
  double fx;
  std::size_t evaluations;
};

// Brent's parabolic/golden-section search on [lo, hi]. Stops when the
// bracket around the best point is no wider than abs_tol (plus a relative
// allowance of a few ulps of x). Deterministic for a deterministic f.
ScalarMinimum brent_minimize(const std::function<double(double)>& f, double lo, double hi,
                             double abs_tol, std::size_t max_evaluations = 500);

// Expands a downhill bracket around x0 inside [lo, hi] and returns an
// interval [left, right] containing a local minimum (or touching a bound).
struct Bracket {
  double left;
  double right;
};
Bracket bracket_minimum(const std::function<double(double)>& f, double x0, double step, double lo,
                        double hi);

}  // namespace zipfkit::optimize
