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

#ifndef FTEC_PIPELINE_H_
#define FTEC_PIPELINE_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "ftec/extractor.h"
#include "ftec/manifest.h"
#include "ftec/model_client.h"
#include "ftec/promptgen.h"
#include "ftec/scorer.h"
#include "ftec/segmenter.h"

namespace ftec {

struct PipelineOptions {
  ExtractorOptions extractor;
  SegmenterOptions segmenter;
  std::uint64_t seed = 0;
  double valid_ratio = 0.1;
  // Documents processed concurrently.
  std::size_t workers = 1;
  // Model requests in flight at once, across all workers.
  std::size_t max_concurrent_requests = 4;
};

struct DocumentFailure {
  std::string doc_id;
  std::string message;
};

// ---- build ----------------------------------------------------------------

// Output files written by run_build, one JSONL per dataset split. Train
// documents are divided into "train" and "valid".
inline constexpr const char* kDatasetFiles[] = {
    "train", "valid", "test_homogeneous", "test_uptodate", "test_hard"};

struct BuildResult {
  std::map<std::string, std::size_t> records;  // dataset file -> lines
  std::map<Split, CorpusStats> stats;
  CorpusStats total;
  std::size_t documents = 0;
  std::size_t pairs = 0;
  std::size_t unresolved = 0;
  std::vector<DocumentFailure> failures;

  std::size_t total_records() const;
};

// Segments, extracts pairs and emits prompt records for every document.
// Writes into out_dir:
//   <file>.jsonl  for each name in kDatasetFiles (possibly empty)
//   pairs.jsonl   per-document pair manifest
//   stats.json    corpus statistics, counts and failures
// Everything is ordered by doc_id, so equal inputs and seed give
// byte-identical files. Unreadable documents are logged and skipped.
// Throws Error(kTemplateMissingPlaceholder) before any work if the template
// for `type` is unusable, and Error(kIo) if outputs cannot be written.
BuildResult run_build(const CorpusManifest& manifest, const Lexicon& lexicon,
                      const PromptTemplates& templates, PromptType type,
                      const std::filesystem::path& out_dir,
                      const PipelineOptions& options = {});

struct StatsResult {
  std::map<Split, CorpusStats> stats;
  CorpusStats total;
  std::vector<DocumentFailure> failures;
};

StatsResult run_stats(const CorpusManifest& manifest,
                      const PipelineOptions& options = {});

nlohmann::ordered_json stats_to_json(const CorpusStats& stats);
nlohmann::ordered_json stats_result_to_json(const StatsResult& result);

// ---- baseline / eval ------------------------------------------------------

struct Accounting {
  std::size_t records = 0;
  std::size_t processed = 0;
  std::size_t skipped = 0;  // no model output (endpoint failure, cache miss)
  std::size_t failed = 0;   // document could not be loaded
  std::size_t malformed_outputs = 0;
  std::size_t empty_reference = 0;

  Accounting& operator+=(const Accounting& o);
  bool operator==(const Accounting&) const = default;
};

enum class DocumentStatus { kProcessed, kSkipped, kFailed };

struct DocumentResult {
  std::string doc_id;
  Split split = Split::kTrain;
  DocumentStatus status = DocumentStatus::kProcessed;
  ScoreReport scores;  // meaningful only when processed
  std::size_t malformed_outputs = 0;
  bool empty_reference = false;
  ApplyReport apply;  // Json prompt types only
  std::string message;
};

struct SplitReport {
  ScoreReport scores;
  Accounting accounting;
};

struct EvalResult {
  std::vector<DocumentResult> documents;  // sorted by doc_id
  std::map<Split, SplitReport> splits;    // every split, empty ones included
  SplitReport total;
};

// Scores each raw hypothesis against its reference, whole document at a
// time, pooled per split.
EvalResult run_baseline(const CorpusManifest& manifest,
                        const PipelineOptions& options = {});

// Outputs come from `cache` when present there, otherwise from `client`
// (and are then stored in `cache`). With no client the run is offline and
// cache misses are skipped.
struct ModelSource {
  ModelClient* client = nullptr;
  OutputCache* cache = nullptr;
};

// For every document: build the prompt(s) for `type`, obtain the model
// output(s), turn them into corrected text (Direct: verbatim; Json: parse
// and apply to the hypothesis segments), then score the corrected document
// against the reference exactly as run_baseline does. Unusable Json output
// leaves the affected text uncorrected and is counted as malformed. A
// document with any missing output is skipped.
EvalResult run_eval(const CorpusManifest& manifest, PromptType type,
                    const PromptTemplates& templates, const ModelSource& source,
                    const PipelineOptions& options = {});

struct BaselineScores {
  std::map<Split, ScoreReport> splits;
  ScoreReport total;
};

// {"splits": {<split>: {<accounting>, "scores": {...}}}, "total": {...}}.
// With a baseline, score entries carry ERR against the matching split.
nlohmann::ordered_json eval_report_to_json(
    const EvalResult& result, const BaselineScores* baseline = nullptr);
BaselineScores baseline_from_json(const nlohmann::ordered_json& report);
BaselineScores load_baseline_report(const std::filesystem::path& path);

std::string document_result_to_jsonl(const DocumentResult& doc);

// report.json and documents.jsonl.
void write_eval_outputs(const std::filesystem::path& out_dir,
                        const EvalResult& result,
                        const BaselineScores* baseline = nullptr);

}  // namespace ftec

#endif  // FTEC_PIPELINE_H_
