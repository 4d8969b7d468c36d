#include "zipfkit/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <string>

#include "kernels/compensated.hpp"
#include "zipfkit/error.hpp"
#include "zipfkit/format.hpp"

namespace zipfkit {
namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

}  // namespace

RankedTable rank(const FrequencyTable& table) {
  // entries() is already in code-point order, so a stable sort on frequency
  // alone yields the tie-break.
  std::vector<const FrequencyTable::Entries::value_type*> order;
  order.reserve(table.vocabulary());
  for (const auto& entry : table.entries()) order.push_back(&entry);
  std::stable_sort(order.begin(), order.end(),
                   [](const auto* x, const auto* y) { return x->second > y->second; });

  RankedTable out;
  out.tokens_.reserve(order.size());
  out.frequencies_.reserve(order.size());
  out.cumulative_.reserve(order.size());
  kernels::detail::NeumaierSum running;
  for (const auto* entry : order) {
    out.tokens_.push_back(entry->first);
    out.frequencies_.push_back(entry->second);
    running.add(entry->second);
    out.cumulative_.push_back(running.value());
  }
  return out;
}

RankedRow RankedTable::row(std::size_t r) const {
  if (r < 1 || r > vocabulary()) {
    throw ArgumentError("rank " + std::to_string(r) + " outside [1, " +
                        std::to_string(vocabulary()) + "]");
  }
  return {r, tokens_[r - 1], frequencies_[r - 1]};
}

double RankedTable::coverage(std::size_t j) const {
  if (j > vocabulary()) {
    throw ArgumentError("coverage index " + std::to_string(j) + " outside [0, " +
                        std::to_string(vocabulary()) + "]");
  }
  if (j == 0) return 0.0;
  return cumulative_[j - 1] / cumulative_.back();
}

HeadTailReport head_tail_report(const RankedTable& table, std::span<const double> head_fractions) {
  if (table.empty()) throw ArgumentError("head/tail report needs a non-empty table");
  std::vector<double> fractions(head_fractions.begin(), head_fractions.end());
  for (double q : fractions) {
    if (!(q > 0.0 && q <= 1.0)) {
      throw ArgumentError("head fraction must lie in (0, 1], got " + format_number(q));
    }
  }
  std::sort(fractions.begin(), fractions.end());

  const std::size_t v = table.vocabulary();
  HeadTailReport report;
  report.vocabulary = v;
  report.total = table.total();
  for (double q : fractions) {
    // The small offset keeps q*V that lands a rounding error above an
    // integer from being pushed to the next rank.
    const double scaled = std::ceil(q * static_cast<double>(v) - 1e-9);
    const auto j = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(scaled, 1.0)), 1, v);
    report.head_coverage.push_back({q, j, table.coverage(j)});
  }

  kernels::detail::NeumaierSum hapax_tokens;
  for (double f : table.frequencies()) {
    if (std::fabs(f - 1.0) < kHapaxTolerance) {
      ++report.hapax_count;
      hapax_tokens.add(f);
    }
  }
  report.hapax_type_fraction = static_cast<double>(report.hapax_count) / static_cast<double>(v);
  report.hapax_token_fraction = hapax_tokens.value() / table.total();
  return report;
}

nlohmann::json to_json(const HeadTailReport& report) {
  nlohmann::json doc;
  doc["vocabulary"] = report.vocabulary;
  doc["total_tokens"] = round_sig(report.total);
  nlohmann::json heads = nlohmann::json::array();
  for (const auto& h : report.head_coverage) {
    heads.push_back({{"type_fraction", round_sig(h.type_fraction)},
                     {"types", h.types},
                     {"token_fraction", round_sig(h.token_fraction)}});
  }
  doc["head_coverage"] = std::move(heads);
  doc["hapax_count"] = report.hapax_count;
  doc["hapax_type_fraction"] = round_sig(report.hapax_type_fraction);
  doc["hapax_token_fraction"] = round_sig(report.hapax_token_fraction);
  return doc;
}

void write_rank_csv(std::ostream& out, const RankedTable& table) {
  out << "rank,token,frequency,relative_frequency,cumulative_coverage\n";
  const double total = table.total();
  for (std::size_t r = 1; r <= table.vocabulary(); ++r) {
    const RankedRow row = table.row(r);
    out << r << ',' << csv_field(row.token) << ',' << format_number(row.frequency) << ','
        << format_number(row.frequency / total) << ',' << format_number(table.coverage(r))
        << '\n';
  }
}

void write_plot_data(std::ostream& out, const RankedTable& table) {
  const auto f = table.frequencies();
  for (std::size_t i = 0; i < f.size(); ++i) out << (i + 1) << ' ' << format_number(f[i]) << '\n';
}

}  // namespace zipfkit
