#include "zipfkit/synth.hpp"

#include <algorithm>
#include <cstdio>
#include <random>
#include <thread>
#include <vector>

#include "zipfkit/error.hpp"
#include "zipfkit/models.hpp"

namespace zipfkit {
namespace {

void validate(const SynthSpec& spec) {
  if (spec.vocabulary < 1) throw ArgumentError("vocabulary must be >= 1");
  if (spec.tokens < 0) throw ArgumentError("token count must be >= 0");
  // alpha and a are checked by ZmDistribution.
}

// Uniform in [0, 1) from the top 53 bits; fixed here rather than left to
// std::uniform_real_distribution, whose algorithm varies by library.
double unit_uniform(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

void draw(const ZmDistribution& dist, std::uint64_t seed, std::int64_t n,
          std::vector<std::int64_t>& counts) {
  std::mt19937_64 gen(seed);
  const auto cdf = dist.cumulative();
  for (std::int64_t i = 0; i < n; ++i) {
    const double u = unit_uniform(gen);
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    ++counts[static_cast<std::size_t>(it - cdf.begin())];
  }
}

FrequencyTable to_table(const std::vector<std::int64_t>& counts) {
  FrequencyTable::Entries entries;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] > 0) {
      entries.emplace(synth_token_name(static_cast<std::int64_t>(i + 1)),
                      static_cast<double>(counts[i]));
    }
  }
  return FrequencyTable(std::move(entries));
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::string synth_token_name(std::int64_t rank) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "t%06lld", static_cast<long long>(rank));
  return buf;
}

FrequencyTable sample_corpus(const SynthSpec& spec) {
  validate(spec);
  const ZmDistribution dist(spec.alpha, spec.a, spec.vocabulary);
  std::vector<std::int64_t> counts(static_cast<std::size_t>(spec.vocabulary), 0);
  draw(dist, spec.seed, spec.tokens, counts);
  return to_table(counts);
}

FrequencyTable sample_corpus_sharded(const SynthSpec& spec, unsigned shards) {
  if (shards == 0) throw ArgumentError("shard count must be >= 1");
  if (shards == 1) return sample_corpus(spec);
  validate(spec);
  const ZmDistribution dist(spec.alpha, spec.a, spec.vocabulary);
  const auto v = static_cast<std::size_t>(spec.vocabulary);
  std::vector<std::vector<std::int64_t>> partial(shards, std::vector<std::int64_t>(v, 0));
  {
    std::vector<std::jthread> workers;
    workers.reserve(shards);
    const std::int64_t base = spec.tokens / shards;
    const std::int64_t extra = spec.tokens % shards;
    for (unsigned i = 0; i < shards; ++i) {
      const std::int64_t n = base + (static_cast<std::int64_t>(i) < extra ? 1 : 0);
      workers.emplace_back([&, i, n] { draw(dist, splitmix64(spec.seed ^ i), n, partial[i]); });
    }
  }
  std::vector<std::int64_t> counts(v, 0);
  for (const auto& p : partial) {
    for (std::size_t r = 0; r < v; ++r) counts[r] += p[r];
  }
  return to_table(counts);
}

}  // namespace zipfkit
