// Copyright 2026 The ftec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ftec/tokenize.h"

#include <sstream>
#include <utility>

#include <gtest/gtest.h>

#include "support/synth.h"

namespace ftec {
namespace {

using Pairs = std::vector<std::pair<std::string, TokenCategory>>;

Pairs simplify(const std::vector<Token>& tokens) {
  Pairs out;
  for (const auto& t : tokens) out.emplace_back(t.text, t.category);
  return out;
}

constexpr auto M = TokenCategory::kMandarin;
constexpr auto P = TokenCategory::kPunctuation;
constexpr auto N = TokenCategory::kItn;
constexpr auto E = TokenCategory::kEnglish;

TEST(Tokenize, MixedExample) {
  EXPECT_EQ(simplify(tokenize_text("今天2024好!")),
            (Pairs{{"今", M}, {"天", M}, {"2024", N}, {"好", M}, {"!", P}}));
}

TEST(Tokenize, Empty) { EXPECT_TRUE(tokenize_text("").empty()); }

TEST(Tokenize, EnglishRunThenPunctuation) {
  EXPECT_EQ(simplify(tokenize_text("OK。")), (Pairs{{"OK", E}, {"。", P}}));
}

TEST(Tokenize, NumberSeparatorsBind) {
  EXPECT_EQ(simplify(tokenize_text("涨了3.5%")),
            (Pairs{{"涨", M}, {"了", M}, {"3.5%", N}}));
  EXPECT_EQ(simplify(tokenize_text("12:30")), (Pairs{{"12:30", N}}));
  EXPECT_EQ(simplify(tokenize_text("-7度")), (Pairs{{"-7", N}, {"度", M}}));
  EXPECT_EQ(simplify(tokenize_text("$20")), (Pairs{{"$20", N}}));
  EXPECT_EQ(simplify(tokenize_text("￥8")), (Pairs{{"￥8", N}}));
}

TEST(Tokenize, UnboundSeparatorsAreNotItn) {
  // A sentence-final period after a number is punctuation.
  EXPECT_EQ(simplify(tokenize_text("3.")), (Pairs{{"3", N}, {".", P}}));
  EXPECT_EQ(simplify(tokenize_text("a:b")), (Pairs{{"a", E}, {":", P}, {"b", E}}));
  // '-' and '%' with no digit neighbour fall outside every scored category.
  EXPECT_TRUE(tokenize_text("-").empty());
  EXPECT_TRUE(tokenize_text("%").empty());
}

TEST(Tokenize, OtherIsSkipped) {
  EXPECT_EQ(simplify(tokenize_text("hi 😀 you")), (Pairs{{"hi", E}, {"you", E}}));
  EXPECT_TRUE(tokenize_text(" \t\n").empty());
}

TEST(Tokenize, ExtensionAIsMandarin) {
  EXPECT_EQ(classify_char(U'㐀'), TokenCategory::kMandarin);
  EXPECT_EQ(classify_char(U'䶿'), TokenCategory::kMandarin);
  EXPECT_EQ(classify_char(U'鿿'), TokenCategory::kMandarin);
  EXPECT_EQ(classify_char(U'가'), TokenCategory::kOther);  // Hangul
}

TEST(Tokenize, LosslessCoverProperty) {
  testing::SyntheticCorpus corpus(7);
  for (int trial = 0; trial < 500; ++trial) {
    const std::string text = corpus.mixed_text(30);
    const auto tokens = tokenize_text(text);
    std::size_t pos = 0;
    std::string rebuilt;
    for (const auto& t : tokens) {
      ASSERT_LT(t.start, t.end);
      ASSERT_GE(t.start, pos);
      ASSERT_NE(t.category, TokenCategory::kOther);
      ASSERT_EQ(text.substr(t.start, t.end - t.start), t.text);
      // Gaps hold only characters outside the scored categories.
      for (const auto& tk : tokenize_text(text.substr(pos, t.start - pos))) {
        ADD_FAILURE() << "scorable text in gap: " << tk.text;
      }
      rebuilt += text.substr(pos, t.start - pos);
      rebuilt += t.text;
      pos = t.end;
    }
    rebuilt += text.substr(pos);
    ASSERT_EQ(rebuilt, text);
  }
}

TEST(Tokenize, Deterministic) {
  const std::string text = "他说：“iPhone 15卖$799，涨了3.5%。”";
  EXPECT_EQ(tokenize_text(text), tokenize_text(text));
}

TEST(SegmentWords, GreedyMatch) {
  const Lexicon lex({"今天", "天气"});
  EXPECT_EQ(segment_words("今天天气", lex),
            (std::vector<std::string>{"今天", "天气"}));
}

TEST(SegmentWords, SingleCharFallback) {
  const Lexicon lex({"很好"});
  EXPECT_EQ(segment_words("天器很好", lex),
            (std::vector<std::string>{"天", "器", "很好"}));
}

TEST(SegmentWords, Empty) {
  EXPECT_TRUE(segment_words("", Lexicon({"今天"})).empty());
  EXPECT_TRUE(segment_words("", Lexicon()).empty());
}

TEST(SegmentWords, LongestMatchWins) {
  const Lexicon lex({"中华", "中华人民", "人民"});
  EXPECT_EQ(segment_words("中华人民", lex),
            (std::vector<std::string>{"中华人民"}));
}

TEST(SegmentWords, LosslessProperty) {
  testing::SyntheticCorpus corpus(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::string text = corpus.mixed_text(40);
    const auto words = segment_words(text, corpus.lexicon());
    ASSERT_EQ(testing::join(words), text);
    for (const auto& w : words) {
      ASSERT_FALSE(w.empty());
    }
  }
}

TEST(Lexicon, LoadSkipsCommentsAndExtraFields) {
  std::istringstream in("# header\n今天 100 t\n\n天气\r\n  \n#x\n很好\n");
  const Lexicon lex = Lexicon::load(in);
  EXPECT_EQ(lex.size(), 3u);
  EXPECT_TRUE(lex.contains("今天"));
  EXPECT_TRUE(lex.contains("天气"));
  EXPECT_FALSE(lex.contains("#x"));
  EXPECT_EQ(lex.max_word_len(), 2u);
}

TEST(Lexicon, MaxWordLenCountsCharacters) {
  EXPECT_EQ(Lexicon({"a", "中华人民"}).max_word_len(), 4u);
  EXPECT_EQ(Lexicon().max_word_len(), 0u);
}

}  // namespace
}  // namespace ftec
