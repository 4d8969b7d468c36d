#pragma once
// Seeded Zipf-Mandelbrot corpus generator, used to check estimators end to end.

#include <cstdint>
#include <string>
#include <string_view>

#include "zipfkit/corpus.hpp"

namespace zipfkit {

struct SynthSpec {
  double alpha = 1.0;
  double a = 0.0;
  std::int64_t vocabulary = 1;
  std::int64_t tokens = 0;
  std::uint64_t seed = 0;
};

// PRNG recorded in run metadata; output is reproducible per identifier.
inline constexpr std::string_view kGeneratorId = "mt19937_64";

// "t000001" .. ; at least six digits, wider when V needs it.
std::string synth_token_name(std::int64_t rank);

// N independent draws by inverse-CDF lookup (binary search in the cumulative
// table). Ranks never drawn are absent from the result.
FrequencyTable sample_corpus(const SynthSpec& spec);

// Splits N across `shards` workers. Shard i draws floor(N/shards) tokens,
// plus one for i < N mod shards, from an mt19937_64 seeded with
// splitmix64(seed XOR i). One shard is identical to sample_corpus; other
// shard counts give results reproducible per (seed, shards) pair only.
FrequencyTable sample_corpus_sharded(const SynthSpec& spec, unsigned shards);

std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace zipfkit
