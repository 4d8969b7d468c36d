#pragma once
// Estimators for the Zipf and Zipf-Mandelbrot laws on a rank-frequency
// table: ordinary least squares in log-log space (with the shift profiled
// out for Zipf-Mandelbrot) and maximum likelihood over a finite vocabulary.

#include <cstddef>
#include <optional>
#include <string>

#include <json.hpp>

#include "zipfkit/models.hpp"
#include "zipfkit/ranking.hpp"

namespace zipfkit {

enum class FitMethod { ls, mle };

std::string method_name(FitMethod m);

struct FitReport {
  RankModel model;
  FitMethod method;
  // Sum of squared log residuals (ls) or negative log-likelihood (mle).
  double objective;
  std::optional<double> r_squared;  // ls only
  double ks_distance;
  std::size_t ranks_used;
  // An estimate sits on a search bound (within the fit tolerance).
  bool boundary_flag;
  // Objective evaluations (ls) or outer coordinate-descent sweeps (mle).
  std::size_t iterations;
};

struct FitDefaults {
  static constexpr double a_max = 100.0;
  static constexpr double alpha_max = 10.0;
  static constexpr double tol = 1e-6;
  // Smallest alpha the likelihood search will visit.
  static constexpr double alpha_min = 1e-6;
  // Grid size for the profiled shift search.
  static constexpr std::size_t shift_grid_points = 129;
};

// log f = log c - alpha log r over ranks with frequency > min_freq.
// Throws InsufficientDataError (< 3 usable rows) or DegenerateDataError
// (all usable frequencies equal).
FitReport fit_zipf_ls(const RankedTable& table, double min_freq = 0.0);

// log f = log c - alpha log(a + r). For fixed a the regression is closed
// form; the residual sum phi(a) is scanned on a uniform grid over
// [0, a_max] and refined around the best grid point with Brent's method
// to bracket width <= tol. The returned point is the best one evaluated,
// so a = 0 reproduces fit_zipf_ls exactly.
FitReport fit_zm_profiled_ls(const RankedTable& table, double a_max = FitDefaults::a_max,
                             double tol = FitDefaults::tol, double min_freq = 0.0);

// Maximises log L(alpha, a) = -alpha sum_r f_r log(a + r) - N log H(V, alpha, a)
// over [alpha_min, alpha_max] x [0, a_max] by coordinate descent from
// (1, 0); each coordinate is bracketed and minimised with Brent's method.
// Stops once both parameters move less than tol in a sweep.
FitReport fit_zm_mle(const RankedTable& table, double a_max = FitDefaults::a_max,
                     double alpha_max = FitDefaults::alpha_max, double tol = FitDefaults::tol);

// Pure Zipf likelihood (a fixed at 0).
FitReport fit_zipf_mle(const RankedTable& table, double alpha_max = FitDefaults::alpha_max,
                       double tol = FitDefaults::tol);

// log L(alpha, a) as maximised by fit_zm_mle (no multinomial constant).
double zm_log_likelihood(const RankedTable& table, double alpha, double a);

// max_r |coverage(r) - zm_cdf(alpha, a, V, r)| with V the table's vocabulary.
double ks_statistic(const RankedTable& table, const RankModel& model);

nlohmann::json to_json(const FitReport& report);

}  // namespace zipfkit
