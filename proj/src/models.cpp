#include "zipfkit/models.hpp"

#include <cmath>
#include <string>

#include "kernels/compensated.hpp"
#include "zipfkit/error.hpp"
#include "zipfkit/format.hpp"
#include "zipfkit/kernels/kernels.hpp"
#include "zipfkit/specfun.hpp"

namespace zipfkit {
namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ArgumentError(std::string(name) + " must be positive and finite, got " +
                        std::to_string(v));
  }
}

void require_rank(std::int64_t rank) {
  if (rank < 1) throw ArgumentError("rank must be >= 1, got " + std::to_string(rank));
}

void require_support(std::int64_t vocabulary, std::int64_t rank) {
  if (vocabulary < 1) {
    throw ArgumentError("vocabulary size must be >= 1, got " + std::to_string(vocabulary));
  }
  if (rank < 1 || rank > vocabulary) {
    throw ArgumentError("rank " + std::to_string(rank) + " outside [1, " +
                        std::to_string(vocabulary) + "]");
  }
}

}  // namespace

ZipfModel::ZipfModel(double alpha_, double c_) : alpha(alpha_), c(c_) {
  require_positive(alpha, "alpha");
  require_positive(c, "c");
}

ZipfMandelbrotModel::ZipfMandelbrotModel(double alpha_, double a_, double c_)
    : alpha(alpha_), a(a_), c(c_) {
  require_positive(alpha, "alpha");
  require_positive(c, "c");
  if (!(a >= 0.0) || !std::isfinite(a)) {
    throw ArgumentError("shift a must be non-negative and finite, got " + std::to_string(a));
  }
}

ZipfMandelbrotModel::ZipfMandelbrotModel(const ZipfModel& zipf)
    : ZipfMandelbrotModel(zipf.alpha, 0.0, zipf.c) {}

ZipfMandelbrotModel as_zipf_mandelbrot(const RankModel& model) {
  return std::visit([](const auto& m) { return ZipfMandelbrotModel(m); }, model);
}

double zipf_frequency(const ZipfModel& m, std::int64_t rank) {
  require_rank(rank);
  return m.c * std::pow(static_cast<double>(rank), -m.alpha);
}

double zm_frequency(const ZipfMandelbrotModel& m, std::int64_t rank) {
  require_rank(rank);
  return m.c * std::pow(m.a + static_cast<double>(rank), -m.alpha);
}

double zm_pmf(double alpha, double a, std::int64_t vocabulary, std::int64_t rank) {
  require_support(vocabulary, rank);
  const double norm = shifted_harmonic(vocabulary, alpha, a);
  return std::pow(a + static_cast<double>(rank), -alpha) / norm;
}

double zm_cdf(double alpha, double a, std::int64_t vocabulary, std::int64_t rank) {
  require_support(vocabulary, rank);
  if (rank == vocabulary) {
    (void)shifted_harmonic(vocabulary, alpha, a);  // argument validation
    return 1.0;
  }
  const auto& k = kernels::active();
  const double head = k.shifted_power_sum(1, static_cast<std::uint64_t>(rank), alpha, a);
  const double rest = k.shifted_power_sum(static_cast<std::uint64_t>(rank) + 1,
                                          static_cast<std::uint64_t>(vocabulary - rank), alpha, a);
  return head / (head + rest);
}

ZmDistribution::ZmDistribution(double alpha, double a, std::int64_t vocabulary)
    : alpha_(alpha), shift_(a) {
  require_positive(alpha, "alpha");
  if (!(a >= 0.0) || !std::isfinite(a)) {
    throw ArgumentError("shift a must be non-negative and finite, got " + std::to_string(a));
  }
  if (vocabulary < 1) {
    throw ArgumentError("vocabulary size must be >= 1, got " + std::to_string(vocabulary));
  }
  const auto v = static_cast<std::size_t>(vocabulary);
  std::vector<double> weights(v);
  kernels::active().shifted_power_fill(weights, 1, alpha, a);

  // Compensated prefix sums so cdf(V) / normaliser is exactly 1.
  cdf_.resize(v);
  kernels::detail::NeumaierSum running;
  for (std::size_t i = 0; i < v; ++i) {
    running.add(weights[i]);
    cdf_[i] = running.value();
  }
  normaliser_ = cdf_.back();
  pmf_.resize(v);
  for (std::size_t i = 0; i < v; ++i) {
    pmf_[i] = weights[i] / normaliser_;
    cdf_[i] /= normaliser_;
  }
  cdf_.back() = 1.0;
}

double ZmDistribution::pmf(std::int64_t rank) const {
  require_support(vocabulary(), rank);
  return pmf_[static_cast<std::size_t>(rank - 1)];
}

double ZmDistribution::cdf(std::int64_t rank) const {
  require_support(vocabulary(), rank);
  return cdf_[static_cast<std::size_t>(rank - 1)];
}

std::vector<double> ZmDistribution::expected_counts(double total) const {
  std::vector<double> out(pmf_.size());
  for (std::size_t i = 0; i < pmf_.size(); ++i) out[i] = total * pmf_[i];
  return out;
}

ZipfMandelbrotModel scaled_to_total(double alpha, double a, std::int64_t vocabulary,
                                    double total) {
  return ZipfMandelbrotModel(alpha, a, total / shifted_harmonic(vocabulary, alpha, a));
}

std::string model_type_name(const RankModel& model) {
  return std::holds_alternative<ZipfModel>(model) ? "zipf" : "zipf_mandelbrot";
}

nlohmann::json model_to_json(const RankModel& model) {
  const ZipfMandelbrotModel m = as_zipf_mandelbrot(model);
  nlohmann::json doc;
  doc["type"] = model_type_name(model);
  doc["alpha"] = round_sig(m.alpha);
  doc["a"] = round_sig(m.a);
  doc["c"] = round_sig(m.c);
  return doc;
}

RankModel model_from_json(const nlohmann::json& doc) {
  try {
    const std::string type = doc.at("type").get<std::string>();
    const double alpha = doc.at("alpha").get<double>();
    const double c = doc.at("c").get<double>();
    if (type == "zipf") return ZipfModel(alpha, c);
    if (type == "zipf_mandelbrot") return ZipfMandelbrotModel(alpha, doc.at("a").get<double>(), c);
    throw ValidationError("unknown model type '" + type + "'");
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed model document: ") + e.what());
  }
}

}  // namespace zipfkit
