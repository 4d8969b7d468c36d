#pragma once
// Rank-frequency tables and head/tail coverage structure.

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "zipfkit/corpus.hpp"

namespace zipfkit {

struct RankedRow {
  std::size_t rank;
  const std::string& token;
  double frequency;
};

// Rows ordered by non-increasing frequency; equal frequencies in ascending
// code-point order of the token. Ranks are dense: 1..V.
class RankedTable {
 public:
  RankedTable() = default;

  std::size_t vocabulary() const noexcept { return frequencies_.size(); }
  bool empty() const noexcept { return frequencies_.empty(); }

  // Sum of frequencies accumulated in rank order.
  double total() const noexcept { return cumulative_.empty() ? 0.0 : cumulative_.back(); }

  RankedRow row(std::size_t rank) const;  // 1-based
  std::span<const double> frequencies() const noexcept { return frequencies_; }
  std::span<const std::string> tokens() const noexcept { return tokens_; }

  // Fraction of all tokens covered by the top j types, 0 <= j <= V.
  double coverage(std::size_t j) const;

  friend RankedTable rank(const FrequencyTable& table);

 private:
  std::vector<std::string> tokens_;
  std::vector<double> frequencies_;
  std::vector<double> cumulative_;  // compensated prefix sums
};

RankedTable rank(const FrequencyTable& table);

struct HeadCoverage {
  double type_fraction;  // requested q
  std::size_t types;     // ceil(q V)
  double token_fraction; // coverage(types)
};

struct HeadTailReport {
  std::size_t vocabulary = 0;
  double total = 0.0;
  std::vector<HeadCoverage> head_coverage;  // ascending in type_fraction
  std::size_t hapax_count = 0;
  double hapax_type_fraction = 0.0;
  double hapax_token_fraction = 0.0;
};

// Frequencies within this distance of 1 count as hapax legomena.
inline constexpr double kHapaxTolerance = 1e-9;

// Throws ArgumentError for an empty table or a fraction outside (0, 1].
HeadTailReport head_tail_report(const RankedTable& table, std::span<const double> head_fractions);

nlohmann::json to_json(const HeadTailReport& report);

// rank,token,frequency,relative_frequency,cumulative_coverage
void write_rank_csv(std::ostream& out, const RankedTable& table);

// "rank frequency" lines for log-log plotting.
void write_plot_data(std::ostream& out, const RankedTable& table);

}  // namespace zipfkit
