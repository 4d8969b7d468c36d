#include "zipfkit/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "optimize.hpp"
#include "zipfkit/error.hpp"
#include "zipfkit/format.hpp"
#include "zipfkit/kernels/kernels.hpp"

namespace zipfkit {
namespace {

void require_finite_nonneg(double v, const char* name) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw ArgumentError(std::string(name) + " must be non-negative and finite, got " +
                        format_number(v));
  }
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ArgumentError(std::string(name) + " must be positive and finite, got " +
                        format_number(v));
  }
}

struct LineFit {
  double slope;
  double intercept;
  double ssr;
  double sst;
};

// Rows retained for least squares: the prefix of ranks with f > min_freq.
class LogLogData {
 public:
  LogLogData(const RankedTable& table, double min_freq) {
    require_finite_nonneg(min_freq, "min_freq");
    const auto f = table.frequencies();
    const auto kept = static_cast<std::size_t>(
        std::find_if(f.begin(), f.end(), [&](double v) { return !(v > min_freq); }) - f.begin());
    if (kept < 3) {
      throw InsufficientDataError("least-squares fit needs at least 3 ranks with frequency > " +
                                  format_number(min_freq) + ", have " + std::to_string(kept));
    }
    if (f[0] == f[kept - 1]) {
      throw DegenerateDataError("all retained frequencies are equal; the exponent is not identifiable");
    }
    log_f_.resize(kept);
    kernels::active().log_fill(f.first(kept), log_f_);
    x_.resize(kept);
  }

  std::size_t size() const noexcept { return log_f_.size(); }

  // Regression of log f on log(shift + r).
  LineFit regress(double shift) {
    const auto& k = kernels::active();
    k.shifted_log_fill(x_, 1, shift);
    const auto n = static_cast<double>(size());
    const double mean_x = k.sum(x_) / n;
    const double mean_y = k.sum(log_f_) / n;
    const kernels::CentredMoments m = k.centred_moments(x_, log_f_, mean_x, mean_y);
    LineFit fit{};
    fit.slope = m.sxy / m.sxx;
    fit.intercept = mean_y - fit.slope * mean_x;
    fit.ssr = k.residual_ss(x_, log_f_, fit.intercept, fit.slope);
    fit.sst = m.syy;
    return fit;
  }

 private:
  std::vector<double> log_f_;
  std::vector<double> x_;
};

FitReport ls_report(const RankedTable& table, const LineFit& line, double shift, bool zm,
                    std::size_t ranks_used, bool boundary, std::size_t evaluations) {
  const double alpha = -line.slope;
  if (!(alpha > 0.0)) {
    throw DegenerateDataError("fitted exponent " + format_number(alpha) + " is not positive");
  }
  const double c = std::exp(line.intercept);
  RankModel model = zm ? RankModel(ZipfMandelbrotModel(alpha, shift, c)) : RankModel(ZipfModel(alpha, c));
  FitReport report{model, FitMethod::ls, line.ssr, 1.0 - line.ssr / line.sst, 0.0, ranks_used,
                   boundary, evaluations};
  report.ks_distance = ks_statistic(table, report.model);
  return report;
}

// Negative log-likelihood with the alpha-independent term sum f log(a+r)
// cached per shift.
class ZmLikelihood {
 public:
  explicit ZmLikelihood(const RankedTable& table)
      : freq_(table.frequencies()), total_(table.total()), logs_(freq_.size()) {}

  double weighted_log_sum(double a) {
    if (a != cached_shift_) {
      const auto& k = kernels::active();
      k.shifted_log_fill(logs_, 1, a);
      cached_sum_ = k.dot(freq_, logs_);
      cached_shift_ = a;
    }
    return cached_sum_;
  }

  double nll(double alpha, double a) {
    const double norm =
        kernels::active().shifted_power_sum(1, freq_.size(), alpha, a);
    return alpha * weighted_log_sum(a) + total_ * std::log(norm);
  }

 private:
  std::span<const double> freq_;
  double total_;
  std::vector<double> logs_;
  double cached_shift_ = std::numeric_limits<double>::quiet_NaN();
  double cached_sum_ = 0.0;
};

void check_mle_data(const RankedTable& table) {
  if (table.vocabulary() < 3) {
    throw InsufficientDataError("likelihood fit needs at least 3 ranks, have " +
                                std::to_string(table.vocabulary()));
  }
  const auto f = table.frequencies();
  if (f.front() == f.back()) {
    throw DegenerateDataError("all frequencies are equal; alpha -> 0 and the shift is not identifiable");
  }
}

// Minimises f over [lo, hi] starting from x0: downhill bracket, Brent inside
// it, and a direct comparison with any bound the bracket touches.
double coordinate_minimum(const std::function<double(double)>& f, double x0, double step,
                          double lo, double hi, double tol) {
  const optimize::Bracket br = optimize::bracket_minimum(f, x0, step, lo, hi);
  optimize::ScalarMinimum best = optimize::brent_minimize(f, br.left, br.right, tol);
  for (double bound : {lo, hi}) {
    if (br.left == bound || br.right == bound) {
      const double fb = f(bound);
      if (fb <= best.fx) best = {bound, fb, best.evaluations + 1};
    }
  }
  return best.x;
}

bool on_bound(double x, double lo, double hi, double tol) {
  return x - lo <= tol || hi - x <= tol;
}

}  // namespace

std::string method_name(FitMethod m) { return m == FitMethod::ls ? "ls" : "mle"; }

FitReport fit_zipf_ls(const RankedTable& table, double min_freq) {
  LogLogData data(table, min_freq);
  const LineFit line = data.regress(0.0);
  return ls_report(table, line, 0.0, false, data.size(), false, 1);
}

FitReport fit_zm_profiled_ls(const RankedTable& table, double a_max, double tol, double min_freq) {
  require_finite_nonneg(a_max, "a_max");
  require_positive(tol, "tol");
  LogLogData data(table, min_freq);

  double best_a = 0.0;
  double best_phi = std::numeric_limits<double>::infinity();
  std::size_t evaluations = 0;
  const auto phi = [&](double a) {
    const double v = data.regress(a).ssr;
    ++evaluations;
    if (v < best_phi) {  // strict: earlier (lower-a) points win ties
      best_phi = v;
      best_a = a;
    }
    return v;
  };

  if (a_max == 0.0) {
    phi(0.0);
  } else {
    const std::size_t last = FitDefaults::shift_grid_points - 1;
    std::vector<double> grid(FitDefaults::shift_grid_points);
    for (std::size_t i = 0; i <= last; ++i) {
      grid[i] = a_max * static_cast<double>(i) / static_cast<double>(last);
    }
    std::size_t best_index = 0;
    for (std::size_t i = 0; i <= last; ++i) {
      const double before = best_phi;
      phi(grid[i]);
      if (best_phi < before) best_index = i;
    }
    const double lo = grid[best_index == 0 ? 0 : best_index - 1];
    const double hi = grid[std::min(best_index + 1, last)];
    optimize::brent_minimize(phi, lo, hi, tol);
  }

  const LineFit line = data.regress(best_a);
  const bool boundary = best_a <= tol || best_a >= a_max - tol;
  return ls_report(table, line, best_a, true, data.size(), boundary, evaluations);
}

FitReport fit_zm_mle(const RankedTable& table, double a_max, double alpha_max, double tol) {
  require_finite_nonneg(a_max, "a_max");
  require_positive(tol, "tol");
  if (!(alpha_max > FitDefaults::alpha_min) || !std::isfinite(alpha_max)) {
    throw ArgumentError("alpha_max must exceed " + format_number(FitDefaults::alpha_min));
  }
  check_mle_data(table);

  ZmLikelihood lik(table);
  const double alpha_lo = FitDefaults::alpha_min;
  double alpha = std::clamp(1.0, alpha_lo, alpha_max);
  double a = 0.0;
  const double inner_tol = 0.1 * tol;
  double alpha_step = 0.1;
  double a_step = 0.1;

  constexpr std::size_t kMaxSweeps = 20000;
  std::size_t sweeps = 0;
  while (sweeps < kMaxSweeps) {
    ++sweeps;
    const double new_alpha = coordinate_minimum([&](double x) { return lik.nll(x, a); }, alpha,
                                                alpha_step, alpha_lo, alpha_max, inner_tol);
    const double new_a =
        a_max == 0.0 ? 0.0
                     : coordinate_minimum([&](double x) { return lik.nll(new_alpha, x); }, a,
                                          a_step, 0.0, a_max, inner_tol);
    const double d_alpha = std::fabs(new_alpha - alpha);
    const double d_a = std::fabs(new_a - a);
    alpha = new_alpha;
    a = new_a;
    if (d_alpha < tol && d_a < tol) break;
    alpha_step = std::max(2.0 * d_alpha, 10.0 * tol);
    a_step = std::max(2.0 * d_a, 10.0 * tol);
  }

  const auto vocab = static_cast<std::int64_t>(table.vocabulary());
  FitReport report{scaled_to_total(alpha, a, vocab, table.total()),
                   FitMethod::mle,
                   lik.nll(alpha, a),
                   std::nullopt,
                   0.0,
                   table.vocabulary(),
                   on_bound(alpha, alpha_lo, alpha_max, tol) || on_bound(a, 0.0, a_max, tol),
                   sweeps};
  report.ks_distance = ks_statistic(table, report.model);
  return report;
}

FitReport fit_zipf_mle(const RankedTable& table, double alpha_max, double tol) {
  require_positive(tol, "tol");
  if (!(alpha_max > FitDefaults::alpha_min) || !std::isfinite(alpha_max)) {
    throw ArgumentError("alpha_max must exceed " + format_number(FitDefaults::alpha_min));
  }
  check_mle_data(table);

  ZmLikelihood lik(table);
  const double alpha_lo = FitDefaults::alpha_min;
  const double alpha = coordinate_minimum([&](double x) { return lik.nll(x, 0.0); },
                                          std::clamp(1.0, alpha_lo, alpha_max), 0.1, alpha_lo,
                                          alpha_max, 0.1 * tol);
  const auto vocab = static_cast<std::int64_t>(table.vocabulary());
  const ZipfMandelbrotModel scaled = scaled_to_total(alpha, 0.0, vocab, table.total());
  FitReport report{ZipfModel(scaled.alpha, scaled.c),
                   FitMethod::mle,
                   lik.nll(alpha, 0.0),
                   std::nullopt,
                   0.0,
                   table.vocabulary(),
                   on_bound(alpha, alpha_lo, alpha_max, tol),
                   1};
  report.ks_distance = ks_statistic(table, report.model);
  return report;
}

double zm_log_likelihood(const RankedTable& table, double alpha, double a) {
  if (table.empty()) throw ArgumentError("likelihood of an empty table");
  ZmLikelihood lik(table);
  return -lik.nll(alpha, a);
}

double ks_statistic(const RankedTable& table, const RankModel& model) {
  if (table.empty()) throw ArgumentError("KS statistic of an empty table");
  const ZipfMandelbrotModel m = as_zipf_mandelbrot(model);
  const ZmDistribution dist(m.alpha, m.a, static_cast<std::int64_t>(table.vocabulary()));
  const auto cdf = dist.cumulative();
  double d = 0.0;
  for (std::size_t r = 1; r <= table.vocabulary(); ++r) {
    d = std::max(d, std::fabs(table.coverage(r) - cdf[r - 1]));
  }
  return std::clamp(d, 0.0, 1.0);
}

nlohmann::json to_json(const FitReport& report) {
  nlohmann::json doc;
  doc["method"] = method_name(report.method);
  doc["model"] = model_to_json(report.model);
  doc["objective"] = round_sig(report.objective);
  doc["r_squared"] = report.r_squared ? nlohmann::json(round_sig(*report.r_squared)) : nlohmann::json();
  doc["ks_distance"] = round_sig(report.ks_distance);
  doc["ranks_used"] = report.ranks_used;
  doc["boundary_flag"] = report.boundary_flag;
  doc["iterations"] = report.iterations;
  return doc;
}

}  // namespace zipfkit
