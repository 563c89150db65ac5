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
#include <atomic>
#include <exception>
#include <fstream>
#include <mutex>
#include <semaphore>
#include <set>
#include <thread>

#include <spdlog/spdlog.h>

#include "ftec/error.h"

namespace ftec {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string dump(const ordered_json& j, int indent = -1) {
  return j.dump(indent, ' ', false, nlohmann::json::error_handler_t::replace);
}

// Runs fn(0..n-1) on up to `workers` threads. The first exception thrown by
// any call is rethrown after all threads have joined.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t workers, Fn&& fn) {
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(n, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(error_mu);
            if (!error) error = std::current_exception();
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out = open_output(path);
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "write failed: " + path.string());
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw Error(ErrorCode::kIo,
                "cannot create " + dir.string() + ": " + ec.message());
  }
}

std::vector<std::size_t> order_by_doc_id(const CorpusManifest& manifest) {
  std::vector<std::size_t> order(manifest.records.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return manifest.records[a].doc_id < manifest.records[b].doc_id;
  });
  return order;
}

ordered_json histogram_to_json(const LengthHistogram& h) {
  ordered_json j;
  j["count"] = h.total;
  j["min"] = h.min;
  j["max"] = h.max;
  j["mean"] = h.mean();
  ordered_json buckets = ordered_json::array();
  for (const LengthBucket& b : h.buckets) {
    buckets.push_back({{"lo", b.lo}, {"hi", b.hi}, {"count", b.count}});
  }
  j["buckets"] = std::move(buckets);
  return j;
}

ordered_json failures_to_json(const std::vector<DocumentFailure>& failures) {
  ordered_json arr = ordered_json::array();
  for (const auto& f : failures) {
    arr.push_back({{"doc_id", f.doc_id}, {"error", f.message}});
  }
  return arr;
}

ordered_json pairs_to_json(const std::vector<ErrorCorrectionPair>& pairs) {
  ordered_json obj = ordered_json::object();
  for (const auto& p : pairs) obj[p.error] = p.correction;
  return obj;
}

struct BuiltDocument {
  bool ok = false;
  std::string error;
  DocumentExtraction extraction;
  std::vector<PromptRecord> records;
};

}  // namespace

// ---- build ----------------------------------------------------------------

std::size_t BuildResult::total_records() const {
  std::size_t n = 0;
  for (const auto& [name, count] : records) n += count;
  return n;
}

BuildResult run_build(const CorpusManifest& manifest, const Lexicon& lexicon,
                      const PromptTemplates& templates, PromptType type,
                      const std::filesystem::path& out_dir,
                      const PipelineOptions& options) {
  templates.render(type, "");  // fail fast on a broken template

  const auto& records = manifest.records;
  std::vector<BuiltDocument> built(records.size());
  parallel_for(records.size(), options.workers, [&](std::size_t i) {
    BuiltDocument& b = built[i];
    try {
      const DocumentPair doc = resolve_document(records[i]);
      b.extraction = pair_manifest(doc, lexicon, options.extractor,
                                   options.segmenter);
      b.records = build_records(b.extraction, type, templates);
      b.ok = true;
    } catch (const Error& e) {
      b.error = e.what();
    }
  });

  std::vector<std::string> train_ids;
  for (const auto& r : records) {
    if (r.split == Split::kTrain) train_ids.push_back(r.doc_id);
  }
  const std::set<std::string> valid_ids =
      choose_validation_docs(train_ids, options.valid_ratio, options.seed);

  BuildResult result;
  result.documents = records.size();
  for (Split s : kSplits) result.stats[s] = CorpusStats{};

  ensure_dir(out_dir);
  std::map<std::string, std::ofstream> files;
  for (const char* name : kDatasetFiles) {
    files.emplace(name, open_output(out_dir / (std::string(name) + ".jsonl")));
    result.records[name] = 0;
  }
  std::ofstream pairs_out = open_output(out_dir / "pairs.jsonl");

  for (std::size_t i : order_by_doc_id(manifest)) {
    const ManifestRecord& rec = records[i];
    const BuiltDocument& b = built[i];
    if (!b.ok) {
      spdlog::warn("skipping document '{}': {}", rec.doc_id, b.error);
      result.failures.push_back({rec.doc_id, b.error});
      continue;
    }
    std::string file(split_name(rec.split));
    if (rec.split == Split::kTrain && valid_ids.count(rec.doc_id)) {
      file = "valid";
    }
    for (const PromptRecord& r : b.records) {
      files[file] << record_to_jsonl(r) << '\n';
      ++result.records[file];
    }

    const DocumentExtraction& ex = b.extraction;
    std::string ref_text;
    for (const auto& seg : ex.segments) ref_text += seg.ref_text;
    result.stats[rec.split].add_document(ref_text, ex.segments);
    result.total.add_document(ref_text, ex.segments);
    result.pairs += ex.pair_count();
    result.unresolved += ex.unresolved.size();

    ordered_json line;
    line["doc_id"] = rec.doc_id;
    line["split"] = split_name(rec.split);
    line["condition"] = condition_name(rec.condition);
    ordered_json per_segment = ordered_json::array();
    for (const auto& pairs : ex.pairs) per_segment.push_back(pairs_to_json(pairs));
    line["pairs"] = std::move(per_segment);
    ordered_json unresolved = ordered_json::array();
    for (const auto& u : ex.unresolved) {
      unresolved.push_back({{"segment_index", u.segment_index},
                            {"hyp_offset", u.hyp_offset},
                            {"error", u.error},
                            {"correction", u.correction}});
    }
    line["unresolved"] = std::move(unresolved);
    pairs_out << dump(line) << '\n';
  }
  for (auto& [name, out] : files) {
    if (!out.flush()) throw Error(ErrorCode::kIo, "write failed: " + name);
  }

  ordered_json stats;
  stats["prompt_type"] = prompt_type_name(type);
  stats["seed"] = options.seed;
  stats["documents"] = {{"total", result.documents},
                        {"processed", result.documents - result.failures.size()},
                        {"failed", result.failures.size()}};
  ordered_json rec_counts;
  for (const char* name : kDatasetFiles) rec_counts[name] = result.records[name];
  stats["records"] = std::move(rec_counts);
  stats["pairs"] = result.pairs;
  stats["unresolved"] = result.unresolved;
  ordered_json corpus;
  for (Split s : kSplits) {
    corpus[std::string(split_name(s))] = stats_to_json(result.stats[s]);
  }
  corpus["all"] = stats_to_json(result.total);
  stats["corpus"] = std::move(corpus);
  stats["failures"] = failures_to_json(result.failures);
  write_file(out_dir / "stats.json", dump(stats, 2) + "\n");
  return result;
}

StatsResult run_stats(const CorpusManifest& manifest,
                      const PipelineOptions& options) {
  const auto& records = manifest.records;
  std::vector<std::optional<std::vector<SegmentPair>>> segments(records.size());
  std::vector<std::string> refs(records.size());
  std::vector<std::string> errors(records.size());
  parallel_for(records.size(), options.workers, [&](std::size_t i) {
    try {
      const DocumentPair doc = resolve_document(records[i]);
      refs[i] = doc.ref_text;
      segments[i] =
          split_segments(doc.ref_text, doc.hyp_text, options.segmenter);
    } catch (const Error& e) {
      errors[i] = e.what();
    }
  });

  StatsResult result;
  for (Split s : kSplits) result.stats[s] = CorpusStats{};
  for (std::size_t i : order_by_doc_id(manifest)) {
    if (!segments[i]) {
      spdlog::warn("skipping document '{}': {}", records[i].doc_id, errors[i]);
      result.failures.push_back({records[i].doc_id, errors[i]});
      continue;
    }
    result.stats[records[i].split].add_document(refs[i], *segments[i]);
    result.total.add_document(refs[i], *segments[i]);
  }
  return result;
}

ordered_json stats_to_json(const CorpusStats& stats) {
  ordered_json j;
  j["articles"] = stats.article_count;
  j["segments"] = stats.segment_count;
  j["article_lengths"] = histogram_to_json(stats.article_lengths);
  j["segment_lengths"] = histogram_to_json(stats.segment_lengths);
  return j;
}

ordered_json stats_result_to_json(const StatsResult& result) {
  ordered_json j;
  ordered_json splits;
  for (const auto& [split, stats] : result.stats) {
    splits[std::string(split_name(split))] = stats_to_json(stats);
  }
  j["splits"] = std::move(splits);
  j["all"] = stats_to_json(result.total);
  j["failures"] = failures_to_json(result.failures);
  return j;
}

// ---- baseline / eval ------------------------------------------------------

Accounting& Accounting::operator+=(const Accounting& o) {
  records += o.records;
  processed += o.processed;
  skipped += o.skipped;
  failed += o.failed;
  malformed_outputs += o.malformed_outputs;
  empty_reference += o.empty_reference;
  return *this;
}

namespace {

using DocumentScorer =
    std::function<void(const DocumentPair& doc, DocumentResult& out)>;

void finish_scoring(const DocumentPair& doc, const std::string& corrected,
                    DocumentResult& out) {
  out.scores = tally_pair(doc.ref_text, corrected);
  const CategoryCounts total = out.scores.overall();
  out.empty_reference = total.n == 0 && total.i > 0;
  out.status = DocumentStatus::kProcessed;
}

EvalResult evaluate(const CorpusManifest& manifest,
                    const PipelineOptions& options,
                    const DocumentScorer& scorer) {
  const auto& records = manifest.records;
  std::vector<DocumentResult> docs(records.size());
  parallel_for(records.size(), options.workers, [&](std::size_t i) {
    DocumentResult& out = docs[i];
    out.doc_id = records[i].doc_id;
    out.split = records[i].split;
    DocumentPair doc;
    try {
      doc = resolve_document(records[i]);
    } catch (const Error& e) {
      out.status = DocumentStatus::kFailed;
      out.message = e.what();
      spdlog::warn("document '{}' failed: {}", out.doc_id, out.message);
      return;
    }
    scorer(doc, out);
  });

  EvalResult result;
  for (Split s : kSplits) result.splits[s] = SplitReport{};
  for (std::size_t i : order_by_doc_id(manifest)) {
    DocumentResult& d = docs[i];
    SplitReport& split = result.splits[d.split];
    Accounting a;
    a.records = 1;
    a.malformed_outputs = d.malformed_outputs;
    switch (d.status) {
      case DocumentStatus::kProcessed:
        a.processed = 1;
        a.empty_reference = d.empty_reference ? 1 : 0;
        split.scores += d.scores;
        result.total.scores += d.scores;
        break;
      case DocumentStatus::kSkipped:
        a.skipped = 1;
        break;
      case DocumentStatus::kFailed:
        a.failed = 1;
        break;
    }
    split.accounting += a;
    result.total.accounting += a;
    result.documents.push_back(std::move(d));
  }
  return result;
}

void merge_apply_report(ApplyReport& into, const ApplyReport& from,
                        std::size_t segment_offset) {
  into.applied += from.applied;
  for (const auto& nf : from.not_found) {
    into.not_found.push_back({nf.segment_index + segment_offset, nf.error});
  }
  for (const auto& am : from.ambiguous) {
    into.ambiguous.push_back(
        {am.segment_index + segment_offset, am.error, am.occurrences});
  }
}

class Querier {
 public:
  Querier(const ModelSource& source, std::size_t max_in_flight)
      : source_(source),
        slots_(static_cast<std::ptrdiff_t>(std::max<std::size_t>(
            1, std::min<std::size_t>(max_in_flight, 1024)))) {}

  std::optional<std::string> query(const OutputKey& key,
                                   const std::string& prompt,
                                   std::string& message) {
    if (source_.cache) {
      if (auto hit = source_.cache->find(key)) return hit;
    }
    if (!source_.client) {
      message = "no cached output (offline)";
      return std::nullopt;
    }
    std::string text;
    slots_.acquire();
    try {
      text = source_.client->complete(prompt);
    } catch (const Error& e) {
      slots_.release();
      message = e.what();
      return std::nullopt;
    }
    slots_.release();
    if (source_.cache) source_.cache->put(key, text);
    return text;
  }

 private:
  const ModelSource& source_;
  std::counting_semaphore<1024> slots_;
};

std::string status_name(DocumentStatus s) {
  switch (s) {
    case DocumentStatus::kProcessed:
      return "processed";
    case DocumentStatus::kSkipped:
      return "skipped";
    case DocumentStatus::kFailed:
      return "failed";
  }
  return "";
}

ordered_json accounting_to_json(const Accounting& a) {
  ordered_json j;
  j["records"] = a.records;
  j["processed"] = a.processed;
  j["skipped"] = a.skipped;
  j["failed"] = a.failed;
  j["malformed_outputs"] = a.malformed_outputs;
  j["empty_reference"] = a.empty_reference;
  return j;
}

ordered_json split_report_to_json(const SplitReport& r,
                                  const ScoreReport* baseline) {
  ordered_json j = accounting_to_json(r.accounting);
  j["scores"] = report_to_json(r.scores, baseline);
  return j;
}

}  // namespace

EvalResult run_baseline(const CorpusManifest& manifest,
                        const PipelineOptions& options) {
  return evaluate(manifest, options,
                  [](const DocumentPair& doc, DocumentResult& out) {
                    finish_scoring(doc, doc.hyp_text, out);
                  });
}

EvalResult run_eval(const CorpusManifest& manifest, PromptType type,
                    const PromptTemplates& templates, const ModelSource& source,
                    const PipelineOptions& options) {
  templates.render(type, "");
  Querier querier(source, options.max_concurrent_requests);

  auto scorer = [&](const DocumentPair& doc, DocumentResult& out) {
    const auto segments =
        split_segments(doc.ref_text, doc.hyp_text, options.segmenter);
    std::vector<std::string> hyp_segments;
    hyp_segments.reserve(segments.size());
    for (const auto& s : segments) hyp_segments.push_back(s.hyp_text);

    auto skip = [&](const std::string& why) {
      out.status = DocumentStatus::kSkipped;
      out.message = why;
      spdlog::warn("document '{}' skipped: {}", out.doc_id, why);
    };

    std::string corrected;
    if (is_article_type(type)) {
      const std::string prompt =
          templates.render(type, article_input(type, hyp_segments));
      std::string why;
      auto output = querier.query({doc.doc_id, std::nullopt, type}, prompt, why);
      if (!output) return skip(why);
      if (type == PromptType::kArticleDirect) {
        corrected = *output;
      } else {
        try {
          const CorrectionSet set =
              parse_correction_json(*output, CorrectionScope::kArticle);
          ApplyResult applied = apply_corrections(hyp_segments, set);
          merge_apply_report(out.apply, applied.report, 0);
          for (const auto& s : applied.segments) corrected += s;
        } catch (const Error& e) {
          ++out.malformed_outputs;
          out.message = e.what();
          corrected = doc.hyp_text;
        }
      }
    } else {
      for (const SegmentPair& seg : segments) {
        const std::string prompt = templates.render(type, seg.hyp_text);
        std::string why;
        auto output = querier.query({doc.doc_id, seg.index, type}, prompt, why);
        if (!output) return skip(why);
        if (type == PromptType::kSegDirect) {
          corrected += *output;
          continue;
        }
        try {
          const CorrectionSet set =
              parse_correction_json(*output, CorrectionScope::kSegment);
          ApplyResult applied = apply_corrections({seg.hyp_text}, set);
          merge_apply_report(out.apply, applied.report, seg.index);
          corrected += applied.segments.front();
        } catch (const Error& e) {
          ++out.malformed_outputs;
          out.message = e.what();
          corrected += seg.hyp_text;
        }
      }
    }
    finish_scoring(doc, corrected, out);
  };
  return evaluate(manifest, options, scorer);
}

ordered_json eval_report_to_json(const EvalResult& result,
                                 const BaselineScores* baseline) {
  ordered_json j;
  ordered_json splits;
  for (const auto& [split, report] : result.splits) {
    const ScoreReport* base = nullptr;
    if (baseline) {
      auto it = baseline->splits.find(split);
      if (it != baseline->splits.end()) base = &it->second;
    }
    splits[std::string(split_name(split))] = split_report_to_json(report, base);
  }
  j["splits"] = std::move(splits);
  j["total"] =
      split_report_to_json(result.total, baseline ? &baseline->total : nullptr);
  return j;
}

BaselineScores baseline_from_json(const ordered_json& report) {
  BaselineScores b;
  try {
    for (const auto& [name, entry] : report.at("splits").items()) {
      b.splits[parse_split(name)] = report_from_json(entry.at("scores"));
    }
    b.total = report_from_json(report.at("total").at("scores"));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedJson,
                std::string("bad baseline report: ") + e.what());
  } catch (const Error& e) {
    throw Error(ErrorCode::kMalformedJson,
                "bad baseline report: " + e.message());
  }
  return b;
}

BaselineScores load_baseline_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  ordered_json j;
  try {
    j = ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kMalformedJson, path.string() + ": " + e.what());
  }
  return baseline_from_json(j);
}

std::string document_result_to_jsonl(const DocumentResult& doc) {
  ordered_json j;
  j["doc_id"] = doc.doc_id;
  j["split"] = split_name(doc.split);
  j["status"] = status_name(doc.status);
  j["scores"] = doc.status == DocumentStatus::kProcessed
                    ? report_to_json(doc.scores)
                    : ordered_json();
  j["malformed_outputs"] = doc.malformed_outputs;
  j["applied"] = doc.apply.applied;
  j["not_found"] = doc.apply.not_found.size();
  j["ambiguous"] = doc.apply.ambiguous.size();
  j["message"] = doc.message;
  return dump(j);
}

void write_eval_outputs(const std::filesystem::path& out_dir,
                        const EvalResult& result,
                        const BaselineScores* baseline) {
  ensure_dir(out_dir);
  write_file(out_dir / "report.json",
             dump(eval_report_to_json(result, baseline), 2) + "\n");
  std::string lines;
  for (const auto& d : result.documents) {
    lines += document_result_to_jsonl(d);
    lines += '\n';
  }
  write_file(out_dir / "documents.jsonl", lines);
}

}  // namespace ftec
