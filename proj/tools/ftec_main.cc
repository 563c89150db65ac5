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

// Command line front end. Run `ftec --help` or `ftec <command> --help`.

#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "ftec/corrector.h"
#include "ftec/error.h"
#include "ftec/extractor.h"
#include "ftec/manifest.h"
#include "ftec/model_client.h"
#include "ftec/pipeline.h"
#include "ftec/promptgen.h"
#include "ftec/scorer.h"
#include "ftec/segmenter.h"
#include "ftec/tokenize.h"

namespace {

using ordered_json = nlohmann::ordered_json;

struct Settings {
  std::string manifest;
  std::string lexicon;
  std::string prompt_type = "seg_direct";
  std::string templates;
  std::string endpoint;
  std::uint64_t seed = 0;
  std::string out;
  std::string outputs;
  std::string baseline;
  bool offline = false;
  double valid_ratio = 0.1;
  std::size_t workers = 1;
  std::size_t max_requests = 4;
  int timeout_ms = 60000;
  int retries = 3;
  int backoff_ms = 200;
  std::size_t min_error_len = 4;
  std::string length_unit = "chars";
  std::size_t uniqueness_cap = 16;
  std::vector<std::string> terminal_marks;
  std::string ref;
  std::string hyp;
  std::string corrections;
  std::string scope = "article";
  std::string log_level = "info";
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ftec::Error(ftec::ErrorCode::kIo, "cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) {
    text.pop_back();
  }
  return text;
}

// Writes to `path`, or stdout when empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text)) {
    throw ftec::Error(ftec::ErrorCode::kIo, "cannot write " + path);
  }
}

ftec::PipelineOptions pipeline_options(const Settings& s) {
  ftec::PipelineOptions o;
  o.seed = s.seed;
  o.valid_ratio = s.valid_ratio;
  o.workers = s.workers;
  o.max_concurrent_requests = s.max_requests;
  o.extractor.min_error_len = s.min_error_len;
  o.extractor.uniqueness_cap = s.uniqueness_cap;
  o.extractor.length_unit = s.length_unit == "words"
                                ? ftec::LengthUnit::kWords
                                : ftec::LengthUnit::kCharacters;
  if (!s.terminal_marks.empty()) o.segmenter.terminal_marks = s.terminal_marks;
  return o;
}

ftec::PromptTemplates templates_of(const Settings& s) {
  return s.templates.empty() ? ftec::PromptTemplates::defaults()
                             : ftec::PromptTemplates::load_file(s.templates);
}

ftec::Lexicon lexicon_of(const Settings& s) {
  return s.lexicon.empty() ? ftec::Lexicon() : ftec::Lexicon::load_file(s.lexicon);
}

int cmd_build(const Settings& s) {
  const auto manifest = ftec::load_manifest(s.manifest);
  const auto result =
      ftec::run_build(manifest, lexicon_of(s), templates_of(s),
                      ftec::parse_prompt_type(s.prompt_type), s.out,
                      pipeline_options(s));
  spdlog::info("{} documents, {} records, {} pairs, {} unresolved, {} failed",
               result.documents, result.total_records(), result.pairs,
               result.unresolved, result.failures.size());
  return 0;
}

int cmd_baseline(const Settings& s) {
  const auto manifest = ftec::load_manifest(s.manifest);
  const auto result = ftec::run_baseline(manifest, pipeline_options(s));
  ftec::write_eval_outputs(s.out, result);
  spdlog::info("baseline over {} documents written to {}",
               result.total.accounting.records, s.out);
  return 0;
}

int cmd_eval(const Settings& s) {
  const auto manifest = ftec::load_manifest(s.manifest);
  std::unique_ptr<ftec::HttpModelClient> client;
  if (!s.offline) {
    if (s.endpoint.empty()) {
      throw ftec::Error(ftec::ErrorCode::kInvalidArgument,
                        "--endpoint is required unless --offline is given");
    }
    ftec::ModelEndpoint ep;
    ep.url = s.endpoint;
    ep.timeout = std::chrono::milliseconds(s.timeout_ms);
    ep.max_retries = s.retries;
    ep.initial_backoff = std::chrono::milliseconds(s.backoff_ms);
    client = std::make_unique<ftec::HttpModelClient>(ep);
  }
  std::optional<ftec::OutputCache> cache;
  if (!s.outputs.empty()) cache.emplace(s.outputs, !s.offline);
  if (s.offline && !cache) {
    throw ftec::Error(ftec::ErrorCode::kInvalidArgument,
                      "--offline needs --outputs");
  }
  std::optional<ftec::BaselineScores> baseline;
  if (!s.baseline.empty()) baseline = ftec::load_baseline_report(s.baseline);

  ftec::ModelSource source{client.get(), cache ? &*cache : nullptr};
  const auto result =
      ftec::run_eval(manifest, ftec::parse_prompt_type(s.prompt_type),
                     templates_of(s), source, pipeline_options(s));
  ftec::write_eval_outputs(s.out, result, baseline ? &*baseline : nullptr);
  const auto& a = result.total.accounting;
  spdlog::info("{} processed, {} skipped, {} failed, {} malformed outputs",
               a.processed, a.skipped, a.failed, a.malformed_outputs);
  return 0;
}

int cmd_stats(const Settings& s) {
  const auto manifest = ftec::load_manifest(s.manifest);
  const auto result = ftec::run_stats(manifest, pipeline_options(s));
  emit(s.out, ftec::stats_result_to_json(result).dump(2) + "\n");
  return 0;
}

// Hypothesis file: one segment per line for article scope, the whole file
// as a single segment for segment scope.
int cmd_apply(const Settings& s) {
  const auto scope = s.scope == "segment" ? ftec::CorrectionScope::kSegment
                                          : ftec::CorrectionScope::kArticle;
  const std::string hyp = read_text(s.hyp);
  std::vector<std::string> segments;
  if (scope == ftec::CorrectionScope::kSegment) {
    segments.push_back(hyp);
  } else {
    std::string line;
    std::istringstream in(hyp);
    while (std::getline(in, line)) segments.push_back(line);
  }
  const auto set =
      ftec::parse_correction_json(read_text(s.corrections), scope);
  const auto result = ftec::apply_corrections(segments, set);
  std::string text;
  for (std::size_t i = 0; i < result.segments.size(); ++i) {
    text += result.segments[i];
    if (scope == ftec::CorrectionScope::kArticle) text += '\n';
  }
  emit(s.out, text);
  for (const auto& nf : result.report.not_found) {
    spdlog::warn("segment {}: '{}' not found", nf.segment_index, nf.error);
  }
  for (const auto& am : result.report.ambiguous) {
    spdlog::warn("segment {}: '{}' occurs {} times", am.segment_index,
                 am.error, am.occurrences);
  }
  spdlog::info("{} of {} corrections applied", result.report.applied,
               result.report.total());
  return 0;
}

int cmd_score(const Settings& s) {
  const auto report = ftec::score_pair(read_text(s.ref), read_text(s.hyp));
  emit(s.out, ftec::report_to_json(report).dump(2) + "\n");
  return 0;
}

int cmd_extract(const Settings& s) {
  const ftec::DocumentPair doc{"", read_text(s.ref), read_text(s.hyp)};
  const auto options = pipeline_options(s);
  const auto ex = ftec::pair_manifest(doc, lexicon_of(s), options.extractor,
                                      options.segmenter);
  ordered_json j;
  j["pairs"] = ordered_json::parse(ftec::serialize_correction_json(
      ftec::to_correction_set(ex.pairs), ftec::CorrectionScope::kArticle));
  ordered_json unresolved = ordered_json::array();
  for (const auto& u : ex.unresolved) {
    unresolved.push_back({{"segment_index", u.segment_index},
                          {"hyp_offset", u.hyp_offset},
                          {"error", u.error},
                          {"correction", u.correction}});
  }
  j["unresolved"] = std::move(unresolved);
  emit(s.out, j.dump(2, ' ', false,
                     nlohmann::json::error_handler_t::replace) + "\n");
  return 0;
}

const std::vector<std::string> kPromptTypeNames = {
    "article_direct", "article_json", "seg_direct", "seg_json"};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Full-text ASR error correction toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value configuration file");
  Settings s;
  app.add_option("--log-level", s.log_level, "trace|debug|info|warn|error")
      ->capture_default_str();

  auto manifest = [&](CLI::App* c) {
    c->add_option("--manifest", s.manifest, "corpus manifest (JSONL)")
        ->required()
        ->check(CLI::ExistingFile);
  };
  auto prompt_type = [&](CLI::App* c) {
    c->add_option("--prompt-type", s.prompt_type)
        ->check(CLI::IsMember(kPromptTypeNames))
        ->capture_default_str();
    c->add_option("--templates", s.templates, "prompt template file")
        ->check(CLI::ExistingFile);
  };
  auto workers = [&](CLI::App* c) {
    c->add_option("--workers", s.workers, "documents processed in parallel")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  };
  auto segmenter = [&](CLI::App* c) {
    c->add_option("--terminal-marks", s.terminal_marks,
                  "sentence terminal marks (default 。？！)");
  };
  auto extractor = [&](CLI::App* c) {
    c->add_option("--lexicon", s.lexicon, "word list, one word per line")
        ->check(CLI::ExistingFile);
    c->add_option("--min-error-len", s.min_error_len)->capture_default_str();
    c->add_option("--length-unit", s.length_unit)
        ->check(CLI::IsMember({"chars", "words"}))
        ->capture_default_str();
    c->add_option("--uniqueness-cap", s.uniqueness_cap,
                  "maximum pair length in characters")
        ->capture_default_str();
    segmenter(c);
  };

  auto* build = app.add_subcommand("build", "emit fine-tuning datasets");
  manifest(build);
  prompt_type(build);
  extractor(build);
  workers(build);
  build->add_option("--seed", s.seed, "validation split seed")
      ->capture_default_str();
  build->add_option("--valid-ratio", s.valid_ratio)
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  build->add_option("--out", s.out, "output directory")->required();

  auto* baseline = app.add_subcommand("baseline", "score raw hypotheses");
  manifest(baseline);
  workers(baseline);
  baseline->add_option("--out", s.out, "output directory")->required();

  auto* eval = app.add_subcommand("eval", "score a correction model");
  manifest(eval);
  prompt_type(eval);
  workers(eval);
  segmenter(eval);
  eval->add_option("--endpoint", s.endpoint, "http://host:port/path");
  eval->add_option("--outputs", s.outputs, "model output cache (JSONL)");
  eval->add_flag("--offline", s.offline, "use only cached outputs");
  eval->add_option("--baseline", s.baseline, "baseline report.json for ERR")
      ->check(CLI::ExistingFile);
  eval->add_option("--max-requests", s.max_requests,
                   "concurrent endpoint requests")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  eval->add_option("--timeout-ms", s.timeout_ms)->capture_default_str();
  eval->add_option("--retries", s.retries)->capture_default_str();
  eval->add_option("--backoff-ms", s.backoff_ms)->capture_default_str();
  eval->add_option("--out", s.out, "output directory")->required();

  auto* stats = app.add_subcommand("stats", "corpus statistics");
  manifest(stats);
  workers(stats);
  segmenter(stats);
  stats->add_option("--out", s.out, "output file (default stdout)");

  auto* apply = app.add_subcommand("apply", "apply correction JSON");
  apply->add_option("--hyp", s.hyp, "hypothesis text")
      ->required()
      ->check(CLI::ExistingFile);
  apply->add_option("--corrections", s.corrections, "correction JSON")
      ->required()
      ->check(CLI::ExistingFile);
  apply->add_option("--scope", s.scope,
                    "article: one segment per line; segment: whole file")
      ->check(CLI::IsMember({"article", "segment"}))
      ->capture_default_str();
  apply->add_option("--out", s.out, "output file (default stdout)");

  auto* score = app.add_subcommand("score", "score one hypothesis");
  score->add_option("--ref", s.ref)->required()->check(CLI::ExistingFile);
  score->add_option("--hyp", s.hyp)->required()->check(CLI::ExistingFile);
  score->add_option("--out", s.out, "output file (default stdout)");

  auto* extract = app.add_subcommand("extract", "extract correction pairs");
  extract->add_option("--ref", s.ref)->required()->check(CLI::ExistingFile);
  extract->add_option("--hyp", s.hyp)->required()->check(CLI::ExistingFile);
  extractor(extract);
  extract->add_option("--out", s.out, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  // Logs go to stderr so stdout stays machine readable.
  spdlog::set_default_logger(spdlog::stderr_color_mt("ftec"));
  spdlog::set_level(spdlog::level::from_str(s.log_level));
  spdlog::set_pattern("[%l] %v");

  try {
    if (*build) return cmd_build(s);
    if (*baseline) return cmd_baseline(s);
    if (*eval) return cmd_eval(s);
    if (*stats) return cmd_stats(s);
    if (*apply) return cmd_apply(s);
    if (*score) return cmd_score(s);
    if (*extract) return cmd_extract(s);
  } catch (const ftec::Error& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  return 0;
}
