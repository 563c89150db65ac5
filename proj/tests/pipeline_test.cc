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

#include "ftec/pipeline.h"

#include <algorithm>
#include <mutex>

#include <gtest/gtest.h>

#include "ftec/error.h"
#include "support/models.h"
#include "support/synth.h"
#include "support/temp_dir.h"

namespace ftec {
namespace {

using testing::slurp;
using testing::TempDir;

ManifestRecord inline_record(std::string id, std::string ref, std::string hyp,
                             Split split = Split::kTestHomogeneous) {
  ManifestRecord r;
  r.doc_id = std::move(id);
  r.ref_text = std::move(ref);
  r.hyp_text = std::move(hyp);
  r.split = split;
  return r;
}

std::size_t line_count(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

std::string report_text(const EvalResult& r,
                        const BaselineScores* baseline = nullptr) {
  return eval_report_to_json(r, baseline).dump(2);
}

void expect_accounting_balanced(const EvalResult& r) {
  for (const auto& [split, rep] : r.splits) {
    const auto& a = rep.accounting;
    EXPECT_EQ(a.processed + a.skipped + a.failed, a.records)
        << split_name(split);
  }
  const auto& a = r.total.accounting;
  EXPECT_EQ(a.processed + a.skipped + a.failed, a.records);
}

// ---- build ----------------------------------------------------------------

TEST(RunBuild, TwoDocumentsSegDirect) {
  CorpusManifest m;
  m.records = {inline_record("b", "甲。乙。", "甲。乙。"),
               inline_record("a", "丙！", "丁！")};
  TempDir dir;
  const auto r = run_build(m, Lexicon(), testing::bare_templates(),
                           PromptType::kSegDirect, dir.path());
  EXPECT_EQ(r.total.article_count, 2u);
  EXPECT_EQ(r.total.segment_count, 3u);
  EXPECT_EQ(r.total_records(), 3u);
  const std::string lines = slurp(dir / "test_homogeneous.jsonl");
  EXPECT_EQ(line_count(lines), 3u);
  // Sorted by doc_id.
  EXPECT_EQ(lines.rfind(R"({"doc_id":"a")", 0), 0u);
  EXPECT_EQ(slurp(dir / "train.jsonl"), "");
  const auto stats = nlohmann::json::parse(slurp(dir / "stats.json"));
  EXPECT_EQ(stats["corpus"]["all"]["articles"], 2);
  EXPECT_EQ(stats["records"]["test_homogeneous"], 3);
  EXPECT_EQ(line_count(slurp(dir / "pairs.jsonl")), 2u);
}

TEST(RunBuild, UnreadableDocumentIsLoggedAndSkipped) {
  CorpusManifest m;
  m.records = {inline_record("good", "好。", "号。")};
  ManifestRecord bad;
  bad.doc_id = "bad";
  bad.ref_path = "/nonexistent/ref.txt";
  bad.split = Split::kTestHard;
  m.records.push_back(bad);
  TempDir dir;
  const auto r = run_build(m, Lexicon(), testing::bare_templates(),
                           PromptType::kArticleDirect, dir.path());
  ASSERT_EQ(r.failures.size(), 1u);
  EXPECT_EQ(r.failures[0].doc_id, "bad");
  EXPECT_NE(r.failures[0].message.find("/nonexistent/ref.txt"),
            std::string::npos);
  EXPECT_EQ(r.total.article_count, 1u);
  EXPECT_EQ(r.total_records(), 1u);
  const auto stats = nlohmann::json::parse(slurp(dir / "stats.json"));
  EXPECT_EQ(stats["documents"]["failed"], 1);
}

TEST(RunBuild, EmptyManifest) {
  TempDir dir;
  const auto r = run_build({}, Lexicon(), testing::bare_templates(),
                           PromptType::kSegJson, dir.path());
  EXPECT_EQ(r.total_records(), 0u);
  EXPECT_EQ(r.total.article_count, 0u);
  for (const char* name : kDatasetFiles) {
    EXPECT_TRUE(std::filesystem::exists(dir / (std::string(name) + ".jsonl")));
    EXPECT_EQ(slurp(dir / (std::string(name) + ".jsonl")), "");
  }
}

TEST(RunBuild, BrokenTemplateFailsUpFront) {
  PromptTemplates t = testing::bare_templates();
  t.set(PromptType::kSegJson, "nothing");
  TempDir dir;
  try {
    run_build({}, Lexicon(), t, PromptType::kSegJson, dir / "out");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTemplateMissingPlaceholder);
  }
  EXPECT_FALSE(std::filesystem::exists(dir / "out"));
}

TEST(RunBuild, DeterministicAcrossRunsAndWorkerCounts) {
  testing::SyntheticCorpus corpus(3);
  const auto m = testing::synthetic_manifest(corpus, 40);
  TempDir a, b;
  PipelineOptions opts;
  opts.seed = 9;
  run_build(m, corpus.lexicon(), PromptTemplates::defaults(),
            PromptType::kArticleJson, a.path(), opts);
  opts.workers = 3;
  run_build(m, corpus.lexicon(), PromptTemplates::defaults(),
            PromptType::kArticleJson, b.path(), opts);
  for (const char* name : {"train.jsonl", "valid.jsonl", "test_hard.jsonl",
                           "pairs.jsonl", "stats.json"}) {
    EXPECT_EQ(slurp(a / name), slurp(b / name)) << name;
  }
}

TEST(RunBuild, TrainDocumentsSplitIntoValidation) {
  CorpusManifest m;
  for (int i = 0; i < 20; ++i) {
    m.records.push_back(inline_record("t" + std::to_string(i), "好。", "好。",
                                      Split::kTrain));
  }
  TempDir dir;
  PipelineOptions opts;
  opts.valid_ratio = 0.1;
  const auto r = run_build(m, Lexicon(), testing::bare_templates(),
                           PromptType::kArticleDirect, dir.path(), opts);
  EXPECT_EQ(r.records.at("valid"), 2u);
  EXPECT_EQ(r.records.at("train"), 18u);
}

TEST(RunStats, CountsPerSplit) {
  CorpusManifest m;
  m.records = {inline_record("a", "一。二。", "一。二。", Split::kTrain),
               inline_record("b", "三", "三", Split::kTestHard)};
  const auto r = run_stats(m);
  EXPECT_EQ(r.stats.at(Split::kTrain).segment_count, 2u);
  EXPECT_EQ(r.stats.at(Split::kTestHard).article_count, 1u);
  EXPECT_EQ(r.stats.at(Split::kTestUpToDate).article_count, 0u);
  EXPECT_EQ(r.total.segment_count, 3u);
  const auto j = stats_result_to_json(r);
  EXPECT_EQ(j["all"]["segments"], 3);
}

// ---- baseline -------------------------------------------------------------

TEST(RunBaseline, IdenticalTextsScoreZero) {
  CorpusManifest m;
  m.records = {inline_record("a", "今天好。", "今天好。")};
  const auto r = run_baseline(m);
  EXPECT_EQ(r.total.scores.overall(), (CategoryCounts{4, 0, 0, 0}));
}

TEST(RunBaseline, MatchesHandCounts) {
  CorpusManifest m;
  m.records = {inline_record("a", "今天好。", "今天号。"),
               inline_record("b", "今好", "今天好")};
  const auto r = run_baseline(m);
  const auto& s = r.splits.at(Split::kTestHomogeneous).scores;
  EXPECT_EQ(s.category(TokenCategory::kMandarin), (CategoryCounts{5, 1, 0, 1}));
  EXPECT_EQ(s.overall(), (CategoryCounts{6, 1, 0, 1}));
}

TEST(RunBaseline, EmptySplitHasEmptyReport) {
  CorpusManifest m;
  m.records = {inline_record("a", "今天好。", "今天号。")};
  const auto r = run_baseline(m);
  EXPECT_EQ(r.splits.at(Split::kTestHard).scores, ScoreReport{});
  const auto j = eval_report_to_json(r);
  EXPECT_TRUE(j["splits"]["test_hard"]["scores"]["overall"]["er"].is_null());
  EXPECT_EQ(j["splits"]["test_hard"]["records"], 0);
}

TEST(RunBaseline, EmptyReferenceCounted) {
  CorpusManifest m;
  m.records = {inline_record("a", "", "多余")};
  const auto r = run_baseline(m);
  EXPECT_EQ(r.total.accounting.empty_reference, 1u);
  EXPECT_EQ(r.total.scores.overall().i, 2u);
}

// ---- eval -----------------------------------------------------------------

class RunEvalTest : public ::testing::Test {
 protected:
  void SetUp() override {
    manifest_ = testing::synthetic_manifest(corpus_, 24);
  }

  testing::SyntheticCorpus corpus_{17};
  CorpusManifest manifest_;
};

TEST_F(RunEvalTest, EchoEqualsBaseline) {
  CallbackModelClient echo([](const std::string& p) { return p; });
  const auto base = run_baseline(manifest_);
  for (PromptType t : {PromptType::kSegDirect, PromptType::kArticleDirect}) {
    const auto r = run_eval(manifest_, t, testing::bare_templates(),
                            {&echo, nullptr});
    EXPECT_EQ(report_text(r), report_text(base)) << prompt_type_name(t);
  }
}

TEST_F(RunEvalTest, ReferenceModelScoresZero) {
  for (PromptType t : {PromptType::kSegDirect, PromptType::kArticleDirect}) {
    auto model = testing::oracle_model(testing::targets_by_prompt(
        manifest_, corpus_.lexicon(), t, testing::bare_templates()));
    const auto r = run_eval(manifest_, t, testing::bare_templates(),
                            {&model, nullptr});
    EXPECT_EQ(r.total.scores.overall().errors(), 0u);
    EXPECT_EQ(r.total.accounting.processed, manifest_.records.size());
  }
}

TEST_F(RunEvalTest, PairModelScoresZeroWhereExtractionRoundTrips) {
  for (PromptType t : {PromptType::kSegJson, PromptType::kArticleJson}) {
    auto model = testing::oracle_model(testing::targets_by_prompt(
        manifest_, corpus_.lexicon(), t, testing::bare_templates()));
    const auto r = run_eval(manifest_, t, testing::bare_templates(),
                            {&model, nullptr});
    EXPECT_EQ(r.total.accounting.malformed_outputs, 0u);
    for (const auto& d : r.documents) {
      const auto rec = std::find_if(
          manifest_.records.begin(), manifest_.records.end(),
          [&](const ManifestRecord& m) { return m.doc_id == d.doc_id; });
      const auto ex = pair_manifest(resolve_document(*rec), corpus_.lexicon());
      if (ex.unresolved.empty()) {
        EXPECT_EQ(d.scores.overall().errors(), 0u) << d.doc_id;
        EXPECT_TRUE(d.apply.not_found.empty());
        EXPECT_TRUE(d.apply.ambiguous.empty());
      }
    }
  }
}

TEST_F(RunEvalTest, MalformedOutputScoredAsHypothesis) {
  CallbackModelClient junk([](const std::string&) { return "I cannot help"; });
  const auto base = run_baseline(manifest_);
  const auto r = run_eval(manifest_, PromptType::kArticleJson,
                          testing::bare_templates(), {&junk, nullptr});
  EXPECT_EQ(r.total.accounting.malformed_outputs, manifest_.records.size());
  EXPECT_EQ(r.total.accounting.processed, manifest_.records.size());
  EXPECT_EQ(r.total.scores, base.total.scores);
}

TEST_F(RunEvalTest, ScopeMismatchCountsAsMalformed) {
  CallbackModelClient wrong([](const std::string&) { return "{}"; });
  const auto r = run_eval(manifest_, PromptType::kArticleJson,
                          testing::bare_templates(), {&wrong, nullptr});
  EXPECT_EQ(r.total.accounting.malformed_outputs, manifest_.records.size());
}

TEST_F(RunEvalTest, EndpointFailuresAreSkippedNotDropped) {
  int calls = 0;
  std::mutex mu;
  CallbackModelClient flaky([&](const std::string& p) {
    std::lock_guard lock(mu);
    if (++calls % 3 == 0) throw Error(ErrorCode::kEndpoint, "down");
    return p;
  });
  const auto r = run_eval(manifest_, PromptType::kArticleDirect,
                          testing::bare_templates(), {&flaky, nullptr});
  EXPECT_EQ(r.total.accounting.skipped, manifest_.records.size() / 3);
  EXPECT_EQ(r.total.accounting.records, manifest_.records.size());
  expect_accounting_balanced(r);
  for (const auto& d : r.documents) {
    if (d.status == DocumentStatus::kSkipped) {
      EXPECT_NE(d.message.find("down"), std::string::npos);
    }
  }
}

TEST_F(RunEvalTest, MissingDocumentCountedAsFailed) {
  ManifestRecord bad;
  bad.doc_id = "zzz";
  bad.ref_path = "/nonexistent";
  bad.split = Split::kTestHard;
  manifest_.records.push_back(bad);
  CallbackModelClient echo([](const std::string& p) { return p; });
  const auto r = run_eval(manifest_, PromptType::kSegDirect,
                          testing::bare_templates(), {&echo, nullptr});
  EXPECT_EQ(r.total.accounting.failed, 1u);
  EXPECT_EQ(r.splits.at(Split::kTestHard).accounting.failed, 1u);
  expect_accounting_balanced(r);
}

TEST_F(RunEvalTest, CacheMakesRunsResumableOffline) {
  TempDir dir;
  const auto path = dir / "outputs.jsonl";
  int calls = 0;
  CallbackModelClient echo([&](const std::string& p) {
    ++calls;
    return p;
  });
  std::string first;
  {
    OutputCache cache(path);
    first = report_text(run_eval(manifest_, PromptType::kSegDirect,
                                 testing::bare_templates(), {&echo, &cache}));
  }
  const int online_calls = calls;
  EXPECT_GT(online_calls, 0);
  {
    OutputCache cache(path, false);
    EXPECT_EQ(cache.size(), static_cast<std::size_t>(online_calls));
    const auto offline = run_eval(manifest_, PromptType::kSegDirect,
                                  testing::bare_templates(), {nullptr, &cache});
    EXPECT_EQ(report_text(offline), first);
  }
  EXPECT_EQ(calls, online_calls);
  // A different prompt type has no cached outputs: every document skipped.
  OutputCache cache(path, false);
  const auto miss = run_eval(manifest_, PromptType::kArticleDirect,
                             testing::bare_templates(), {nullptr, &cache});
  EXPECT_EQ(miss.total.accounting.skipped, manifest_.records.size());
  EXPECT_EQ(miss.total.scores, ScoreReport{});
}

TEST_F(RunEvalTest, ParallelWorkersGiveSameReport) {
  CallbackModelClient echo([](const std::string& p) { return p; });
  PipelineOptions opts;
  const auto serial = run_eval(manifest_, PromptType::kSegDirect,
                               testing::bare_templates(), {&echo, nullptr}, opts);
  opts.workers = 4;
  opts.max_concurrent_requests = 2;
  const auto parallel = run_eval(manifest_, PromptType::kSegDirect,
                                 testing::bare_templates(), {&echo, nullptr},
                                 opts);
  EXPECT_EQ(report_text(serial), report_text(parallel));
}

TEST_F(RunEvalTest, ErrAgainstBaselineReport) {
  TempDir dir;
  const auto base = run_baseline(manifest_);
  write_eval_outputs(dir.path(), base);
  const auto loaded = load_baseline_report(dir / "report.json");
  EXPECT_EQ(loaded.total, base.total.scores);
  auto model = testing::oracle_model(testing::targets_by_prompt(
      manifest_, corpus_.lexicon(), PromptType::kSegDirect,
      testing::bare_templates()));
  const auto r = run_eval(manifest_, PromptType::kSegDirect,
                          testing::bare_templates(), {&model, nullptr});
  const auto j = eval_report_to_json(r, &loaded);
  EXPECT_EQ(j["total"]["scores"]["overall"]["err_percent"], "-100.00");
  write_eval_outputs(dir / "eval", r, &loaded);
  EXPECT_EQ(line_count(slurp(dir / "eval" / "documents.jsonl")),
            manifest_.records.size());
}

}  // namespace
}  // namespace ftec
