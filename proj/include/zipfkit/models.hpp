#pragma once
// Zipf (f = c / r^alpha) and Zipf-Mandelbrot (f = c / (a + r)^alpha) models,
// as frequency laws and as distributions normalised over ranks 1..V.

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace zipfkit {

struct ZipfModel {
  double alpha;
  double c;

  // Throws ArgumentError unless alpha > 0 and c > 0.
  ZipfModel(double alpha, double c);
};

// The shift a is only required to be non-negative; it is not capped below 1.
struct ZipfMandelbrotModel {
  double alpha;
  double a;
  double c;

  ZipfMandelbrotModel(double alpha, double a, double c);
  explicit ZipfMandelbrotModel(const ZipfModel& zipf);
};

using RankModel = std::variant<ZipfModel, ZipfMandelbrotModel>;

// Common (alpha, a, c) view; a = 0 for ZipfModel.
ZipfMandelbrotModel as_zipf_mandelbrot(const RankModel& model);

double zipf_frequency(const ZipfModel& m, std::int64_t rank);
double zm_frequency(const ZipfMandelbrotModel& m, std::int64_t rank);

// p(r) = (a+r)^(-alpha) / sum_{k=1..V} (a+k)^(-alpha)
double zm_pmf(double alpha, double a, std::int64_t vocabulary, std::int64_t rank);

// sum_{k<=r} p(k); exactly 1 at r = V.
double zm_cdf(double alpha, double a, std::int64_t vocabulary, std::int64_t rank);

// Precomputed finite-support Zipf-Mandelbrot distribution. Holds the
// cumulative table used by inverse-CDF sampling and KS distances.
class ZmDistribution {
 public:
  ZmDistribution(double alpha, double a, std::int64_t vocabulary);

  double alpha() const noexcept { return alpha_; }
  double shift() const noexcept { return shift_; }
  std::int64_t vocabulary() const noexcept { return static_cast<std::int64_t>(cdf_.size()); }

  // sum_{k=1..V} (a+k)^(-alpha)
  double normaliser() const noexcept { return normaliser_; }

  double pmf(std::int64_t rank) const;
  double cdf(std::int64_t rank) const;

  // cdf(1) .. cdf(V); non-decreasing, last element exactly 1.
  std::span<const double> cumulative() const noexcept { return cdf_; }

  // Expected counts N * p(r) for r = 1..V.
  std::vector<double> expected_counts(double total) const;

 private:
  double alpha_;
  double shift_;
  double normaliser_ = 0.0;
  std::vector<double> pmf_;
  std::vector<double> cdf_;
};

// Lift a probability model to expected counts: c = N / sum_{r<=V} (a+r)^(-alpha).
ZipfMandelbrotModel scaled_to_total(double alpha, double a, std::int64_t vocabulary,
                                    double total);

// {"type": "zipf" | "zipf_mandelbrot", "alpha", "a", "c"}
nlohmann::json model_to_json(const RankModel& model);
RankModel model_from_json(const nlohmann::json& doc);

std::string model_type_name(const RankModel& model);

}  // namespace zipfkit
