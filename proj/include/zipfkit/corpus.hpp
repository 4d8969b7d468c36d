#pragma once
// Text ingestion: UTF-8 decoding, NFC normalisation, tokenisation and
// frequency counting; plus the "token<TAB>count" interchange format.

#include <compare>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace zipfkit {

// Non-empty NFC UTF-8 string.
class Token {
 public:
  explicit Token(std::string text);

  const std::string& text() const noexcept { return text_; }

  friend bool operator==(const Token&, const Token&) = default;
  friend std::strong_ordering operator<=>(const Token& a, const Token& b) {
    return a.text_.compare(b.text_) <=> 0;
  }

 private:
  std::string text_;
};

enum class TokenMode { character, word };

struct TokenizerConfig {
  TokenMode mode = TokenMode::character;
  bool drop_whitespace = false;  // always in effect in word mode
  bool drop_punctuation = false; // Unicode general categories P* and S*
  bool lowercase = false;
};

// Splits valid UTF-8 text into tokens. Throws DecodeError (with the byte
// offset of the first bad sequence) on malformed input.
std::vector<Token> tokenize(std::string_view utf8, const TokenizerConfig& config);

// Token -> count. Counts are reals so analytic tables flow through the same
// pipeline; integer counts stay exact below 2^53. Immutable once built.
class FrequencyTable {
 public:
  using Entries = std::map<std::string, double>;  // code-point order

  FrequencyTable() = default;

  // Throws ValidationError if any count is not positive and finite, or a
  // token is empty.
  explicit FrequencyTable(Entries entries);

  const Entries& entries() const noexcept { return entries_; }
  double total() const noexcept { return total_; }
  std::size_t vocabulary() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  // 0 when absent.
  double count_of(std::string_view token) const;

  friend bool operator==(const FrequencyTable&, const FrequencyTable&) = default;

 private:
  Entries entries_;
  double total_ = 0.0;
};

// Mutable tally used while counting; merge is commutative and associative
// for integer counts, so chunked or parallel counting gives the same table.
class CountAccumulator {
 public:
  void add(std::string_view token, double count = 1.0);
  void merge(const CountAccumulator& other);
  FrequencyTable finish() const;

 private:
  std::unordered_map<std::string, double> counts_;
};

FrequencyTable count(std::span<const Token> tokens);

// Streams UTF-8 text in chunks of about chunk_bytes, cutting only where the
// cut cannot change normalisation, case mapping or token boundaries.
// DecodeError offsets are relative to the start of the stream.
FrequencyTable count_stream(std::istream& in, const TokenizerConfig& config,
                            std::size_t chunk_bytes = std::size_t{1} << 20);

// "token<TAB>count" per line. Tokens escape '\\', TAB, LF and CR as
// "\\\\", "\\t", "\\n", "\\r". Duplicate tokens are summed. A trailing
// newline and blank final line are accepted.
FrequencyTable load_counts(std::istream& in);
FrequencyTable load_counts(const std::filesystem::path& path);

// Writes entries in code-point order with counts as "%.10g".
void write_counts(std::ostream& out, const FrequencyTable& table);

std::string escape_tsv_token(std::string_view token);
std::string unescape_tsv_token(std::string_view field);

}  // namespace zipfkit
