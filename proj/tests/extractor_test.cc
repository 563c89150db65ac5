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

#include "ftec/extractor.h"

#include <cstdio>

#include <gtest/gtest.h>

#include "ftec/corrector.h"
#include "ftec/utf8.h"
#include "support/oracle.h"
#include "support/synth.h"

namespace ftec {
namespace {

using Pairs = std::vector<std::pair<std::string, std::string>>;

Pairs simplify(const std::vector<ErrorCorrectionPair>& pairs) {
  Pairs out;
  for (const auto& p : pairs) out.emplace_back(p.error, p.correction);
  return out;
}

Pairs extract(std::string ref, std::string hyp, const Lexicon& lex,
              const ExtractorOptions& opts = {}) {
  const auto ex = extract_pairs({0, ref, hyp}, lex, opts);
  EXPECT_TRUE(ex.unresolved.empty());
  return simplify(ex.pairs);
}

TEST(ExtractPairs, IdenticalTextsGiveNothing) {
  const auto ex = extract_pairs({0, "今天天气很好。", "今天天气很好。"},
                                Lexicon({"今天", "天气"}));
  EXPECT_TRUE(ex.pairs.empty());
  EXPECT_TRUE(ex.unresolved.empty());
}

TEST(ExtractPairs, SubstitutionPaddedWithFollowingWords) {
  // 天器 is two characters; one following word brings it to four.
  const Lexicon lex({"今天", "天气", "天器", "很好"});
  EXPECT_EQ(extract("今天天气很好。", "今天天器很好。", lex),
            (Pairs{{"天器很好", "天气很好"}}));
}

TEST(ExtractPairs, DeletionFoldsIntoSubstitution) {
  const Lexicon lex({"我们", "今天", "公园"});
  EXPECT_EQ(extract("我们今天去公园。", "我们天去公园。", lex),
            (Pairs{{"天去公园", "今天去公园"}}));
}

TEST(ExtractPairs, InsertionAttachesToPrecedingWord) {
  const Lexicon lex({"我们", "今天", "公园", "出去"});
  // Hypothesis inserts 啊 after 今天.
  const auto pairs = extract("我们今天出去玩。", "我们今天啊出去玩。", lex);
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_EQ(pairs[0].first.substr(0, std::string("今天啊").size()), "今天啊");
  EXPECT_EQ(testing::naive_apply("我们今天啊出去玩。", pairs), "我们今天出去玩。");
}

TEST(ExtractPairs, InsertionAtStartAttachesToFollowingWord) {
  const Lexicon lex({"今天", "天气", "很好"});
  const auto pairs = extract("今天天气很好。", "嗯今天天气很好。", lex);
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_EQ(pairs[0].first.rfind("嗯今天", 0), 0u);
  EXPECT_EQ(testing::naive_apply("嗯今天天气很好。", pairs), "今天天气很好。");
}

TEST(ExtractPairs, ErrorAtSegmentEndPadsBackwards) {
  const Lexicon lex({"今天", "天气", "很好", "很号"});
  const auto pairs = extract("今天天气很好", "今天天气很号", lex);
  EXPECT_EQ(pairs, (Pairs{{"天气很号", "天气很好"}}));
}

TEST(ExtractPairs, ShortSegmentUsesWholeText) {
  const Lexicon lex;
  EXPECT_EQ(extract("好。", "号。", lex), (Pairs{{"号。", "好。"}}));
}

TEST(ExtractPairs, RepeatedContextGrowsUntilUnique) {
  const Lexicon lex({"天气", "很好", "今天", "明天"});
  // Once corrected, "天气很好" occurs twice, so the pair must carry more
  // context than the minimum length.
  const std::string ref = "今天天气很好，明天天气很好。";
  const std::string hyp = "今天天气很好，明天天器很好。";
  const auto ex = extract_pairs({0, ref, hyp}, lex);
  ASSERT_TRUE(ex.unresolved.empty());
  ASSERT_EQ(ex.pairs.size(), 1u);
  EXPECT_EQ(testing::naive_count(hyp, ex.pairs[0].error), 1u);
  EXPECT_EQ(testing::naive_apply(hyp, simplify(ex.pairs)), ref);
}

TEST(ExtractPairs, UniquenessGrowthExtendsAcrossDuplicates) {
  const Lexicon lex({"好的", "好地"});
  // The error window "好地好的" repeats, so it must grow past the repeat.
  const std::string ref = "好的好的好的好的。";
  const std::string hyp = "好的好地好的好的。";
  const auto ex = extract_pairs({0, ref, hyp}, lex);
  ASSERT_TRUE(ex.unresolved.empty());
  for (const auto& p : ex.pairs) {
    EXPECT_EQ(testing::naive_count(hyp, p.error), 1u) << p.error;
  }
  EXPECT_EQ(testing::naive_apply(hyp, simplify(ex.pairs)), ref);
}

TEST(ExtractPairs, UnresolvableWhenCapReached) {
  ExtractorOptions opts;
  opts.uniqueness_cap = 4;
  // Every four-character window around the error also occurs elsewhere.
  const std::string ref = "甲乙甲乙甲乙甲乙";
  const std::string hyp = "甲乙甲乙甲乙甲乙甲";
  const auto ex = extract_pairs({3, ref, hyp}, Lexicon(), opts);
  EXPECT_TRUE(ex.pairs.empty());
  ASSERT_EQ(ex.unresolved.size(), 1u);
  EXPECT_EQ(ex.unresolved[0].segment_index, 3u);
  EXPECT_EQ(hyp.substr(ex.unresolved[0].hyp_offset,
                       ex.unresolved[0].error.size()),
            ex.unresolved[0].error);
}

TEST(ExtractPairs, NearbyErrorsMerge) {
  // Two substitutions separated by one matched word become one pair.
  const auto pairs = extract("我们今天天气很好。", "我门今天天器很好。",
                             Lexicon({"今天", "天气"}));
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_EQ(testing::naive_apply("我门今天天器很好。", pairs),
            "我们今天天气很好。");
}

TEST(ExtractPairs, TwoMatchedWordsKeepErrorsApart) {
  // 我们/我门 and 天气/天器 are separated by 今天 and 天, two matches.
  const auto pairs = extract("我们今天天气很好。", "我门今天天器很好。",
                             Lexicon({"今天"}));
  EXPECT_EQ(pairs.size(), 2u);
}

TEST(ExtractPairs, DistantErrorsStaySeparate) {
  const Lexicon lex({"今天", "天气", "很好", "我们", "一起", "出去", "散步"});
  const std::string ref = "今天天气很好，我们一起出去散步。";
  const std::string hyp = "今天天器很好，我们一起出去散部。";
  const auto pairs = extract(ref, hyp, lex);
  EXPECT_EQ(pairs.size(), 2u);
  EXPECT_EQ(testing::naive_apply(hyp, pairs), ref);
}

TEST(ExtractPairs, WordLengthUnit) {
  ExtractorOptions opts;
  opts.length_unit = LengthUnit::kWords;
  opts.min_error_len = 2;
  const Lexicon lex({"今天", "天气", "天器", "很好"});
  EXPECT_EQ(extract("今天天气很好。", "今天天器很好。", lex, opts),
            (Pairs{{"天器很好", "天气很好"}}));
}

TEST(PairManifest, CleanSegmentsGiveEmptyLists) {
  const auto ex = pair_manifest({"d", "甲。乙。", "甲。乙。"}, Lexicon());
  EXPECT_EQ(ex.pairs.size(), 2u);
  EXPECT_TRUE(ex.pairs[0].empty());
  EXPECT_TRUE(ex.pairs[1].empty());
  EXPECT_EQ(ex.pair_count(), 0u);
}

TEST(PairManifest, ErrorInSecondSegment) {
  const Lexicon lex({"今天", "天气", "天器", "很好"});
  const auto ex = pair_manifest(
      {"d", "你好。今天天气很好。", "你好。今天天器很好。"}, lex);
  ASSERT_EQ(ex.pairs.size(), 2u);
  EXPECT_TRUE(ex.pairs[0].empty());
  ASSERT_EQ(ex.pairs[1].size(), 1u);
  EXPECT_EQ(ex.pairs[1][0].segment_index, 1u);
  EXPECT_EQ(ex.pairs[1][0].error, "天器很好");
}

TEST(PairManifest, EmptyDocument) {
  const auto ex = pair_manifest({"d", "", ""}, Lexicon());
  EXPECT_TRUE(ex.pairs.empty());
  EXPECT_TRUE(ex.segments.empty());
}

// Round trip, minimum length, uniqueness and no-op exclusion on a
// synthetic corpus.
TEST(ExtractPairs, PropertiesOnSyntheticCorpus) {
  testing::SyntheticCorpus corpus(99);
  std::size_t segments = 0, unresolved = 0;
  for (int d = 0; d < 200; ++d) {
    const auto doc = corpus.document("d" + std::to_string(d));
    const auto ex = pair_manifest(doc, corpus.lexicon());
    for (std::size_t s = 0; s < ex.segments.size(); ++s) {
      ++segments;
      const auto& seg = ex.segments[s];
      bool seg_unresolved = false;
      for (const auto& u : ex.unresolved) seg_unresolved |= u.segment_index == s;
      unresolved += seg_unresolved;
      for (const auto& p : ex.pairs[s]) {
        ASSERT_NE(p.error, p.correction);
        ASSERT_GE(utf8::char_count(p.error),
                  std::min<std::size_t>(4, utf8::char_count(seg.hyp_text)));
        ASSERT_EQ(testing::naive_count(seg.hyp_text, p.error), 1u);
      }
      if (!seg_unresolved) {
        ASSERT_EQ(testing::naive_apply(seg.hyp_text, simplify(ex.pairs[s])),
                  seg.ref_text);
        const auto applied = apply_corrections(
            {seg.hyp_text}, to_correction_set({ex.pairs[s]}));
        ASSERT_EQ(applied.segments[0], seg.ref_text);
      }
    }
  }
  EXPECT_LT(static_cast<double>(unresolved) / segments, 0.02);
}

// With a two-word vocabulary nearly every short window repeats, so pairs
// only become unique through uniqueness growth.
TEST(ExtractPairs, RepetitiveCorpusStillRoundTrips) {
  testing::SyntheticCorpus corpus(4, 2);
  std::size_t segments = 0, unresolved = 0, pairs = 0;
  for (int d = 0; d < 300; ++d) {
    const auto doc = corpus.document("r" + std::to_string(d));
    const auto ex = pair_manifest(doc, corpus.lexicon());
    for (std::size_t s = 0; s < ex.segments.size(); ++s) {
      ++segments;
      bool seg_unresolved = false;
      for (const auto& u : ex.unresolved) {
        seg_unresolved |= u.segment_index == s;
      }
      unresolved += seg_unresolved;
      pairs += ex.pairs[s].size();
      const auto& hyp = ex.segments[s].hyp_text;
      for (const auto& p : ex.pairs[s]) {
        ASSERT_EQ(testing::naive_count(hyp, p.error), 1u);
      }
      if (!seg_unresolved) {
        ASSERT_EQ(testing::naive_apply(hyp, simplify(ex.pairs[s])),
                  ex.segments[s].ref_text);
      }
    }
  }
  EXPECT_GT(pairs, 0u);
  RecordProperty("unresolved_segments", static_cast<int>(unresolved));
  std::printf("repetitive corpus: %zu segments, %zu pairs, %zu unresolved\n",
              segments, pairs, unresolved);
}

}  // namespace
}  // namespace ftec
