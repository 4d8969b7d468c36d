#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "zipfkit/corpus.hpp"
#include "zipfkit/error.hpp"

namespace zipfkit {
namespace {

std::vector<std::string> texts(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  for (const auto& t : tokens) out.push_back(t.text());
  return out;
}

using Strings = std::vector<std::string>;

TokenizerConfig word_mode() {
  TokenizerConfig c;
  c.mode = TokenMode::word;
  return c;
}

TokenizerConfig char_mode() { return TokenizerConfig{}; }

TEST(Tokenize, WordModeSplitsOnWhitespaceRuns) {
  EXPECT_EQ(texts(tokenize("abc abc de", word_mode())), (Strings{"abc", "abc", "de"}));
  EXPECT_EQ(texts(tokenize("  abc\t\n  de 　 f  ", word_mode())), (Strings{"abc", "de", "f"}));
}

TEST(Tokenize, CharacterModeKeepsEveryScalarValue) {
  EXPECT_EQ(texts(tokenize("aba", char_mode())), (Strings{"a", "b", "a"}));
  EXPECT_EQ(texts(tokenize("a b", char_mode())), (Strings{"a", " ", "b"}));
  EXPECT_EQ(texts(tokenize("王曰貞", char_mode())), (Strings{"王", "曰", "貞"}));
  // Supplementary-plane character.
  EXPECT_EQ(texts(tokenize("\U00020000x", char_mode())), (Strings{"\U00020000", "x"}));
}

TEST(Tokenize, EmptyInput) {
  EXPECT_TRUE(tokenize("", char_mode()).empty());
  EXPECT_TRUE(tokenize("", word_mode()).empty());
  EXPECT_TRUE(tokenize("   ", word_mode()).empty());
}

TEST(Tokenize, DropFilters) {
  TokenizerConfig c = char_mode();
  c.drop_whitespace = true;
  c.drop_punctuation = true;
  // P* and S* categories: comma, full stop, ideographic comma, plus sign, currency.
  EXPECT_EQ(texts(tokenize("a, b.、c+$d", c)), (Strings{"a", "b", "c", "d"}));

  TokenizerConfig w = word_mode();
  w.drop_punctuation = true;
  EXPECT_EQ(texts(tokenize("hello, world. -- ok", w)), (Strings{"hello", "world", "ok"}));
}

TEST(Tokenize, NfcUnifiesComposedAndDecomposedForms) {
  // U+00E9 vs e + U+0301
  const auto composed = texts(tokenize("é", char_mode()));
  const auto decomposed = texts(tokenize("é", char_mode()));
  EXPECT_EQ(composed, (Strings{"é"}));
  EXPECT_EQ(decomposed, composed);
}

TEST(Tokenize, Lowercase) {
  TokenizerConfig w = word_mode();
  w.lowercase = true;
  EXPECT_EQ(texts(tokenize("The THE the", w)), (Strings{"the", "the", "the"}));
  // Final sigma uses context.
  EXPECT_EQ(texts(tokenize("ΟΔΟΣ", w)), (Strings{"οδος"}));
}

TEST(Tokenize, InvalidUtf8ReportsByteOffset) {
  try {
    tokenize(std::string("ab\xC3(", 4), char_mode());
    FAIL() << "expected DecodeError";
  } catch (const DecodeError& e) {
    EXPECT_EQ(e.byte_offset(), 3u);
  }
  EXPECT_THROW(tokenize(std::string("\xFF"), char_mode()), DecodeError);
  EXPECT_THROW(tokenize(std::string("\xED\xA0\x80"), char_mode()), DecodeError);  // surrogate
  EXPECT_THROW(tokenize(std::string("\xC0\xAF"), char_mode()), DecodeError);      // overlong
  try {
    tokenize(std::string("abc\xE4\xB8"), char_mode());
    FAIL() << "expected DecodeError";
  } catch (const DecodeError& e) {
    EXPECT_EQ(e.byte_offset(), 3u);
  }
}

TEST(Count, Examples) {
  const auto t = count(tokenize("abc abc de", word_mode()));
  EXPECT_EQ(t.entries(), (FrequencyTable::Entries{{"abc", 2.0}, {"de", 1.0}}));
  EXPECT_EQ(t.total(), 3.0);
  EXPECT_EQ(t.vocabulary(), 2u);

  const auto empty = count(std::vector<Token>{});
  EXPECT_TRUE(empty.empty());
  EXPECT_EQ(empty.total(), 0.0);

  const auto aba = count(tokenize("aba", char_mode()));
  EXPECT_EQ(aba.entries(), (FrequencyTable::Entries{{"a", 2.0}, {"b", 1.0}}));
  EXPECT_EQ(aba.total(), 3.0);
}

TEST(Count, TokenRejectsEmpty) { EXPECT_THROW(Token(""), ArgumentError); }

// Generates text over a small alphabet including combining marks, CJK,
// punctuation, Greek capitals and assorted whitespace.
std::string random_text(std::mt19937_64& gen, std::size_t pieces) {
  static const std::vector<std::string> alphabet = {
      "a", "b", "E", "é", "é", " ", "  ", "\n", "\t", ",", ".", "王", "貞", "　",
      "Σ", "Ο", "ς", "'", "-", "ﬁ", "\U00020000", "x"};
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::string s;
  for (std::size_t i = 0; i < pieces; ++i) s += alphabet[pick(gen)];
  return s;
}

TEST(CountProperties, PermutationInvariance) {
  std::mt19937_64 gen(1);
  for (int trial = 0; trial < 20; ++trial) {
    auto tokens = tokenize(random_text(gen, 200), char_mode());
    const auto before = count(tokens);
    std::shuffle(tokens.begin(), tokens.end(), gen);
    EXPECT_EQ(count(tokens), before);
  }
}

TEST(CountProperties, DoublingTextDoublesCounts) {
  std::mt19937_64 gen(2);
  for (int trial = 0; trial < 20; ++trial) {
    const std::string s = random_text(gen, 150) + " ";
    const auto once = count(tokenize(s, word_mode()));
    const auto twice = count(tokenize(s + s, word_mode()));
    ASSERT_EQ(once.vocabulary(), twice.vocabulary());
    for (const auto& [token, n] : once.entries()) EXPECT_EQ(twice.count_of(token), 2.0 * n);
  }
}

TEST(CountProperties, TotalsBoundVocabulary) {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto t = count(tokenize(random_text(gen, 100), char_mode()));
    EXPECT_GE(t.total(), static_cast<double>(t.vocabulary()));
    const bool all_hapax = std::all_of(t.entries().begin(), t.entries().end(),
                                       [](const auto& e) { return e.second == 1.0; });
    EXPECT_EQ(t.total() == static_cast<double>(t.vocabulary()), all_hapax);
  }
}

TEST(CountStream, IndependentOfChunkSize) {
  std::mt19937_64 gen(4);
  for (int trial = 0; trial < 10; ++trial) {
    const std::string text = random_text(gen, 600);
    for (TokenizerConfig config : {char_mode(), word_mode()}) {
      for (bool lower : {false, true}) {
        config.lowercase = lower;
        const auto whole = count(tokenize(text, config));
        for (std::size_t chunk : {1u, 2u, 3u, 7u, 64u, 100000u}) {
          std::istringstream in(text);
          EXPECT_EQ(count_stream(in, config, chunk), whole)
              << "chunk " << chunk << " mode " << static_cast<int>(config.mode);
        }
      }
    }
  }
}

TEST(CountStream, DecodeErrorOffsetIsGlobal) {
  std::string text(5000, 'a');
  text[4321] = '\xFE';
  std::istringstream in(text);
  try {
    count_stream(in, char_mode(), 1000);
    FAIL() << "expected DecodeError";
  } catch (const DecodeError& e) {
    EXPECT_EQ(e.byte_offset(), 4321u);
  }
  std::istringstream truncated(std::string("abc\xE4\xB8"));
  EXPECT_THROW(count_stream(truncated, char_mode(), 2), DecodeError);
}

TEST(CountAccumulator, MergeIsOrderIndependent) {
  CountAccumulator a, b, c;
  a.add("x", 2);
  a.add("y");
  b.add("y", 3);
  c.add("z");
  CountAccumulator ab = a;
  ab.merge(b);
  ab.merge(c);
  CountAccumulator cb = c;
  cb.merge(b);
  cb.merge(a);
  EXPECT_EQ(ab.finish(), cb.finish());
  EXPECT_EQ(ab.finish().total(), 7.0);
}

TEST(LoadCounts, Examples) {
  std::istringstream in("a\t3\nb\t1");
  const auto t = load_counts(in);
  EXPECT_EQ(t.entries(), (FrequencyTable::Entries{{"a", 3.0}, {"b", 1.0}}));
  EXPECT_EQ(t.total(), 4.0);

  std::istringstream dup("a\t2\na\t2\n");
  const auto d = load_counts(dup);
  EXPECT_EQ(d.entries(), (FrequencyTable::Entries{{"a", 4.0}}));
  EXPECT_EQ(d.total(), 4.0);

  std::istringstream zero("a\t0");
  EXPECT_THROW(load_counts(zero), ValidationError);
  std::istringstream negative("a\t-2");
  EXPECT_THROW(load_counts(negative), ValidationError);
}

TEST(LoadCounts, RealCountsAndCrlf) {
  std::istringstream in("a\t2.5\r\nb\t1e-3\r\n");
  const auto t = load_counts(in);
  EXPECT_EQ(t.count_of("a"), 2.5);
  EXPECT_EQ(t.count_of("b"), 1e-3);
}

TEST(LoadCounts, MalformedLinesReportLineNumber) {
  const auto line_of = [](const std::string& text) -> std::size_t {
    std::istringstream in(text);
    try {
      load_counts(in);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("a\t1\nno tab here\n"), 2u);
  EXPECT_EQ(line_of("a\t1\nb\t2\nc\t1\t2\n"), 3u);
  EXPECT_EQ(line_of("a\tthree\n"), 1u);
  EXPECT_EQ(line_of("a\t3x\n"), 1u);
  EXPECT_EQ(line_of("\t3\n"), 1u);
  EXPECT_EQ(line_of("a\t\n"), 1u);
}

TEST(LoadCounts, NormalisesTokensToNfc) {
  std::istringstream in("é\t1\né\t2\n");
  const auto t = load_counts(in);
  EXPECT_EQ(t.vocabulary(), 1u);
  EXPECT_EQ(t.count_of("é"), 3.0);
}

TEST(WriteCounts, RoundTripsThroughLoad) {
  // Tokens containing TAB, newline and backslash survive the escape scheme.
  const FrequencyTable t(FrequencyTable::Entries{
      {"a", 3}, {"\t", 2}, {"\n", 5}, {"\\", 1}, {"x\\ty", 4}, {"r", 0.125}, {"big", 123456789012.0}});
  std::ostringstream out;
  write_counts(out, t);
  std::istringstream in(out.str());
  EXPECT_EQ(load_counts(in), t);
}

TEST(FrequencyTable, ValidatesCounts) {
  EXPECT_THROW(FrequencyTable(FrequencyTable::Entries{{"a", 0.0}}), ValidationError);
  EXPECT_THROW(FrequencyTable(FrequencyTable::Entries{{"a", -1.0}}), ValidationError);
  EXPECT_THROW(FrequencyTable(FrequencyTable::Entries{{"", 1.0}}), ValidationError);
  const FrequencyTable t(FrequencyTable::Entries{{"a", 0.1}, {"b", 0.2}, {"c", 0.3}});
  EXPECT_NEAR(t.total(), 0.6, 1e-15);
}

}  // namespace
}  // namespace zipfkit
