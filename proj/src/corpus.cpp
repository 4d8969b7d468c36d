#include "zipfkit/corpus.hpp"

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <utility>

#include "kernels/compensated.hpp"
#include "zipfkit/error.hpp"
#include "zipfkit/format.hpp"

namespace zipfkit {
namespace {

const icu::Normalizer2& nfc() {
  static const icu::Normalizer2* instance = [] {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* n = icu::Normalizer2::getNFCInstance(status);
    if (U_FAILURE(status) || n == nullptr) {
      throw Error(std::string("ICU NFC normaliser unavailable: ") + u_errorName(status));
    }
    return n;
  }();
  return *instance;
}

bool in_range(unsigned char b, unsigned char lo, unsigned char hi) { return b >= lo && b <= hi; }

// Length of the longest prefix made of complete, well-formed UTF-8 sequences.
// An incomplete (but so far valid) sequence at the very end is left out
// unless at_end is set, in which case it is an error. base_offset is added to
// reported byte offsets.
std::size_t validate_utf8(std::string_view s, std::size_t from, std::size_t base_offset,
                          bool at_end) {
  std::size_t i = from;
  while (i < s.size()) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    std::size_t len = 0;
    unsigned char lo = 0x80, hi = 0xBF;  // bounds for the second byte
    if (b0 < 0x80) {
      ++i;
      continue;
    } else if (in_range(b0, 0xC2, 0xDF)) {
      len = 2;
    } else if (b0 == 0xE0) {
      len = 3, lo = 0xA0;
    } else if (in_range(b0, 0xE1, 0xEC) || in_range(b0, 0xEE, 0xEF)) {
      len = 3;
    } else if (b0 == 0xED) {
      len = 3, hi = 0x9F;  // excludes surrogates
    } else if (b0 == 0xF0) {
      len = 4, lo = 0x90;
    } else if (in_range(b0, 0xF1, 0xF3)) {
      len = 4;
    } else if (b0 == 0xF4) {
      len = 4, hi = 0x8F;
    } else {
      throw DecodeError("invalid UTF-8 lead byte", base_offset + i);
    }
    for (std::size_t k = 1; k < len; ++k) {
      if (i + k >= s.size()) {
        if (at_end) throw DecodeError("truncated UTF-8 sequence", base_offset + i);
        return i;
      }
      const auto b = static_cast<unsigned char>(s[i + k]);
      const bool ok = (k == 1) ? in_range(b, lo, hi) : in_range(b, 0x80, 0xBF);
      if (!ok) throw DecodeError("invalid UTF-8 continuation byte", base_offset + i + k);
    }
    i += len;
  }
  return i;
}

bool is_whitespace(UChar32 c) { return u_isUWhiteSpace(c) != 0; }

bool is_punct_or_symbol(UChar32 c) {
  return (U_GET_GC_MASK(c) & (U_GC_P_MASK | U_GC_S_MASK)) != 0;
}

void append_utf8(std::string& out, UChar32 c) {
  char buf[U8_MAX_LENGTH];
  int32_t n = 0;
  U8_APPEND_UNSAFE(buf, n, c);
  out.append(buf, static_cast<std::size_t>(n));
}

// Calls emit(std::string&&) for each token of already-validated UTF-8 text.
template <typename Emit>
void for_each_token(std::string_view utf8, const TokenizerConfig& config, Emit&& emit) {
  if (utf8.empty()) return;
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString text = icu::UnicodeString::fromUTF8(
      icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
  text = nfc().normalize(text, status);
  if (config.lowercase) {
    text.toLower(icu::Locale::getRoot());
    text = nfc().normalize(text, status);
  }
  if (U_FAILURE(status)) throw Error(std::string("normalisation failed: ") + u_errorName(status));

  const bool word_mode = config.mode == TokenMode::word;
  std::string word;
  for (int32_t i = 0; i < text.length();) {
    const UChar32 c = text.char32At(i);
    i += U16_LENGTH(c);
    if (word_mode) {
      if (is_whitespace(c)) {
        if (!word.empty()) emit(std::exchange(word, std::string{}));
        continue;
      }
      if (config.drop_punctuation && is_punct_or_symbol(c)) continue;
      append_utf8(word, c);
    } else {
      if (config.drop_whitespace && is_whitespace(c)) continue;
      if (config.drop_punctuation && is_punct_or_symbol(c)) continue;
      std::string token;
      append_utf8(token, c);
      emit(std::move(token));
    }
  }
  if (!word.empty()) emit(std::move(word));
}

// A position before code point c where text can be cut without changing the
// result: NFC has a boundary there, c is neither cased nor case-ignorable (so
// contextual lowercasing such as final sigma is unaffected), and in word mode
// c is whitespace.
bool is_cut_point(UChar32 c, TokenMode mode) {
  if (!nfc().hasBoundaryBefore(c)) return false;
  if (mode == TokenMode::word) return is_whitespace(c);
  return !u_hasBinaryProperty(c, UCHAR_CASED) && !u_hasBinaryProperty(c, UCHAR_CASE_IGNORABLE);
}

// Last cut position in (floor, end], scanning code points backwards; 0 if none.
std::size_t find_cut(std::string_view s, std::size_t floor, std::size_t end, TokenMode mode) {
  std::size_t i = end;
  while (i > floor && i > 0) {
    std::size_t start = i - 1;
    while (start > 0 && (static_cast<unsigned char>(s[start]) & 0xC0) == 0x80) --start;
    int32_t pos = static_cast<int32_t>(start);
    UChar32 c = 0;
    U8_NEXT_UNSAFE(reinterpret_cast<const uint8_t*>(s.data()), pos, c);
    if (start > 0 && is_cut_point(c, mode)) return start;
    i = start;
  }
  return 0;
}

}  // namespace

Token::Token(std::string text) : text_(std::move(text)) {
  if (text_.empty()) throw ArgumentError("token must be non-empty");
}

std::vector<Token> tokenize(std::string_view utf8, const TokenizerConfig& config) {
  validate_utf8(utf8, 0, 0, true);
  std::vector<Token> out;
  for_each_token(utf8, config, [&](std::string&& t) { out.emplace_back(std::move(t)); });
  return out;
}

FrequencyTable::FrequencyTable(Entries entries) : entries_(std::move(entries)) {
  kernels::detail::NeumaierSum total;
  for (const auto& [token, n] : entries_) {
    if (token.empty()) throw ValidationError("empty token in frequency table");
    if (!(n > 0.0) || !std::isfinite(n)) {
      throw ValidationError("count for token '" + token + "' must be positive and finite, got " +
                            format_number(n));
    }
    total.add(n);
  }
  total_ = total.value();
}

double FrequencyTable::count_of(std::string_view token) const {
  const auto it = entries_.find(std::string(token));
  return it == entries_.end() ? 0.0 : it->second;
}

void CountAccumulator::add(std::string_view token, double n) {
  counts_[std::string(token)] += n;
}

void CountAccumulator::merge(const CountAccumulator& other) {
  for (const auto& [token, n] : other.counts_) counts_[token] += n;
}

FrequencyTable CountAccumulator::finish() const {
  return FrequencyTable(FrequencyTable::Entries(counts_.begin(), counts_.end()));
}

FrequencyTable count(std::span<const Token> tokens) {
  CountAccumulator acc;
  for (const auto& t : tokens) acc.add(t.text());
  return acc.finish();
}

FrequencyTable count_stream(std::istream& in, const TokenizerConfig& config,
                            std::size_t chunk_bytes) {
  if (chunk_bytes == 0) throw ArgumentError("chunk size must be positive");
  CountAccumulator acc;
  const auto emit = [&](std::string&& t) { acc.add(t); };

  std::string pending;
  std::size_t pending_offset = 0;  // stream offset of pending[0]
  std::size_t validated = 0;       // pending[0, validated) is complete, valid UTF-8
  std::size_t scanned = 0;         // no cut point in (0, scanned]
  std::string buf(chunk_bytes, '\0');

  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    const auto got = static_cast<std::size_t>(in.gcount());
    if (got == 0) break;
    pending.append(buf.data(), got);
    validated = validate_utf8(pending, validated, pending_offset, false);

    const std::size_t cut = find_cut(pending, scanned, validated, config.mode);
    if (cut == 0) {
      scanned = validated;
      continue;
    }
    for_each_token(std::string_view(pending).substr(0, cut), config, emit);
    pending.erase(0, cut);
    pending_offset += cut;
    validated -= cut;
    scanned = 0;
  }
  if (in.bad()) throw IoError("read failure at byte offset " + std::to_string(pending_offset));

  validate_utf8(pending, validated, pending_offset, true);
  for_each_token(pending, config, emit);
  return acc.finish();
}

std::string escape_tsv_token(std::string_view token) {
  std::string out;
  out.reserve(token.size());
  for (char ch : token) {
    switch (ch) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string unescape_tsv_token(std::string_view field) {
  std::string out;
  out.reserve(field.size());
  for (std::size_t i = 0; i < field.size(); ++i) {
    if (field[i] == '\\' && i + 1 < field.size()) {
      const char next = field[i + 1];
      const char mapped = next == '\\' ? '\\' : next == 't' ? '\t' : next == 'n' ? '\n'
                        : next == 'r'  ? '\r' : '\0';
      if (mapped != '\0') {
        out += mapped;
        ++i;
        continue;
      }
    }
    out += field[i];
  }
  return out;
}

FrequencyTable load_counts(std::istream& in) {
  CountAccumulator acc;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError("expected 'token<TAB>count'", line_no);
    if (line.find('\t', tab + 1) != std::string::npos) {
      throw ParseError("more than one TAB on line", line_no);
    }
    std::string token = unescape_tsv_token(std::string_view(line).substr(0, tab));
    if (token.empty()) throw ParseError("empty token", line_no);
    try {
      validate_utf8(token, 0, 0, true);
    } catch (const DecodeError& e) {
      throw ParseError(std::string("token is not valid UTF-8 (") + e.what() + ")", line_no);
    }

    const std::string_view field = std::string_view(line).substr(tab + 1);
    double value = 0.0;
    const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc{} || end != field.data() + field.size()) {
      throw ParseError("count '" + std::string(field) + "' is not a number", line_no);
    }
    if (!(value > 0.0) || !std::isfinite(value)) {
      throw ValidationError("line " + std::to_string(line_no) + ": count must be positive, got " +
                            std::string(field));
    }

    UErrorCode status = U_ZERO_ERROR;
    const icu::UnicodeString u = icu::UnicodeString::fromUTF8(token);
    if (!nfc().isNormalized(u, status)) {
      token.clear();
      nfc().normalize(u, status).toUTF8String(token);
    }
    acc.add(token, value);
  }
  if (in.bad()) throw IoError("read failure after line " + std::to_string(line_no));
  return acc.finish();
}

FrequencyTable load_counts(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return load_counts(in);
}

void write_counts(std::ostream& out, const FrequencyTable& table) {
  for (const auto& [token, n] : table.entries()) {
    out << escape_tsv_token(token) << '\t';
    if (n == std::floor(n) && n < 9007199254740992.0) {
      out << static_cast<std::uint64_t>(n);
    } else {
      out << format_number(n);
    }
    out << '\n';
  }
}

}  // namespace zipfkit
