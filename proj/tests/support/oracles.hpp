#pragma once
// Test-only reference computations, independent of the library's kernels.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "zipfkit/corpus.hpp"
#include "zipfkit/ranking.hpp"

namespace zipfkit::testing {

using Rational = boost::multiprecision::cpp_rational;

// sum_{r=1..n} 1 / (r + shift)^power with integer shift and power, exactly.
inline Rational exact_harmonic(int n, int power, int shift = 0) {
  Rational total = 0;
  for (int r = 1; r <= n; ++r) {
    boost::multiprecision::cpp_int d = 1;
    for (int k = 0; k < power; ++k) d *= (r + shift);
    total += Rational(1, d);
  }
  return total;
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

// Long-double summation from the smallest term up; an independent route to
// the shifted power sums used by the kernels.
inline long double reference_power_sum(std::int64_t n, long double alpha, long double shift) {
  long double total = 0.0L;
  for (std::int64_t r = n; r >= 1; --r) total += std::pow(shift + static_cast<long double>(r), -alpha);
  return total;
}

inline std::string rank_token(std::size_t r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "r%07zu", r);
  return buf;
}

// Table whose r-th token has frequency freq[r-1]; token names sort in rank order.
inline FrequencyTable table_from_frequencies(const std::vector<double>& freq) {
  FrequencyTable::Entries entries;
  for (std::size_t i = 0; i < freq.size(); ++i) entries.emplace(rank_token(i + 1), freq[i]);
  return FrequencyTable(std::move(entries));
}

inline RankedTable ranked_from_frequencies(const std::vector<double>& freq) {
  return rank(table_from_frequencies(freq));
}

// f_r = c / (a + r)^alpha, r = 1..n
inline std::vector<double> power_law_frequencies(double c, double alpha, double a, std::size_t n) {
  std::vector<double> f(n);
  for (std::size_t r = 1; r <= n; ++r) f[r - 1] = c / std::pow(a + static_cast<double>(r), alpha);
  return f;
}

// N * p(r) for ZM(alpha, a) on ranks 1..V, normalised in long double.
inline std::vector<double> expected_counts(double alpha, double a, std::size_t v, double total) {
  std::vector<long double> w(v);
  long double norm = 0.0L;
  for (std::size_t r = v; r >= 1; --r) {
    w[r - 1] = std::pow(static_cast<long double>(a) + r, -static_cast<long double>(alpha));
    norm += w[r - 1];
  }
  std::vector<double> out(v);
  for (std::size_t i = 0; i < v; ++i) out[i] = static_cast<double>(total * w[i] / norm);
  return out;
}

}  // namespace zipfkit::testing
