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

#include "ftec/promptgen.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

#include <json.hpp>

#include "ftec/error.h"
#include "ftec/kv_file.h"

namespace ftec {

namespace {

using ordered_json = nlohmann::ordered_json;

std::size_t slot(PromptType t) { return static_cast<std::size_t>(t); }

std::string dump(const ordered_json& j) {
  return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

}  // namespace

std::string_view prompt_type_name(PromptType t) {
  switch (t) {
    case PromptType::kArticleDirect:
      return "article_direct";
    case PromptType::kArticleJson:
      return "article_json";
    case PromptType::kSegDirect:
      return "seg_direct";
    case PromptType::kSegJson:
      return "seg_json";
  }
  return "";
}

PromptType parse_prompt_type(std::string_view name) {
  for (PromptType t : kPromptTypes) {
    if (prompt_type_name(t) == name) return t;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown prompt type '" + std::string(name) + "'");
}

PromptTemplates PromptTemplates::defaults() {
  PromptTemplates t;
  t.set(PromptType::kArticleDirect,
        "请对下面这篇语音识别转写的全文进行纠错，修正其中的错别字、标点符号和"
        "数字书写格式，直接输出纠正后的全文。\n{input}");
  t.set(PromptType::kArticleJson,
        "下面是一篇语音识别转写的全文，每行是一个句段。请找出各句段中的错误，"
        "按句段顺序输出一个JSON数组，数组中每个元素是对应句段的纠错字典，键为"
        "原文中的错误片段，值为纠正后的片段；没有错误的句段输出空字典。\n"
        "{input}");
  t.set(PromptType::kSegDirect,
        "请对下面这段语音识别转写文本进行纠错，修正其中的错别字、标点符号和"
        "数字书写格式，直接输出纠正后的文本。\n{input}");
  t.set(PromptType::kSegJson,
        "请找出下面这段语音识别转写文本中的错误，以JSON字典输出，键为原文中的"
        "错误片段，值为纠正后的片段；没有错误时输出空字典。\n{input}");
  return t;
}

PromptTemplates PromptTemplates::load(std::istream& in) {
  PromptTemplates t = defaults();
  for (auto& [key, value] : parse_kv(in)) {
    try {
      t.set(parse_prompt_type(key), std::move(value));
    } catch (const Error&) {
      throw Error(ErrorCode::kInvalidConfig,
                  "unknown template key '" + key + "'");
    }
  }
  return t;
}

PromptTemplates PromptTemplates::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open templates " + path.string());
  }
  return load(in);
}

const std::string& PromptTemplates::get(PromptType t) const {
  return text_[slot(t)];
}

void PromptTemplates::set(PromptType t, std::string text) {
  text_[slot(t)] = std::move(text);
}

std::string PromptTemplates::render(PromptType t,
                                    std::string_view input) const {
  const std::string& tmpl = get(t);
  const auto pos = tmpl.find(kInputPlaceholder);
  if (pos == std::string::npos) {
    throw Error(ErrorCode::kTemplateMissingPlaceholder,
                std::string(prompt_type_name(t)) + " template lacks {input}");
  }
  std::string out;
  out.reserve(tmpl.size() + input.size());
  out.append(tmpl, 0, pos);
  out.append(input);
  out.append(tmpl, pos + kInputPlaceholder.size());
  return out;
}

std::string article_input(PromptType t,
                          const std::vector<std::string>& hyp_segments) {
  std::string out;
  for (std::size_t i = 0; i < hyp_segments.size(); ++i) {
    if (i > 0 && t == PromptType::kArticleJson) out += '\n';
    out += hyp_segments[i];
  }
  return out;
}

PromptRecord build_segment_record(std::string_view doc_id,
                                  const SegmentPair& segment,
                                  const std::vector<ErrorCorrectionPair>& pairs,
                                  PromptType type,
                                  const PromptTemplates& templates) {
  if (is_article_type(type)) {
    throw Error(ErrorCode::kInvalidArgument,
                "segment record requested for an article prompt type");
  }
  PromptRecord r;
  r.doc_id = std::string(doc_id);
  r.segment_index = segment.index;
  r.type = type;
  r.prompt = templates.render(type, segment.hyp_text);
  if (type == PromptType::kSegDirect) {
    r.target = segment.ref_text;
  } else {
    CorrectionSet set;
    set.per_segment.push_back(to_correction_map(pairs));
    r.target = serialize_correction_json(set, CorrectionScope::kSegment);
  }
  return r;
}

PromptRecord build_article_record(const DocumentExtraction& doc,
                                  PromptType type,
                                  const PromptTemplates& templates) {
  if (!is_article_type(type)) {
    throw Error(ErrorCode::kInvalidArgument,
                "article record requested for a segment prompt type");
  }
  std::vector<std::string> hyp_segments;
  std::string ref_text;
  for (const SegmentPair& seg : doc.segments) {
    hyp_segments.push_back(seg.hyp_text);
    ref_text += seg.ref_text;
  }
  PromptRecord r;
  r.doc_id = doc.doc_id;
  r.type = type;
  r.prompt = templates.render(type, article_input(type, hyp_segments));
  if (type == PromptType::kArticleDirect) {
    r.target = std::move(ref_text);
  } else {
    r.target = serialize_correction_json(to_correction_set(doc.pairs),
                                         CorrectionScope::kArticle);
  }
  return r;
}

std::vector<PromptRecord> build_records(const DocumentExtraction& doc,
                                        PromptType type,
                                        const PromptTemplates& templates) {
  if (is_article_type(type)) {
    return {build_article_record(doc, type, templates)};
  }
  std::vector<PromptRecord> records;
  records.reserve(doc.segments.size());
  for (std::size_t i = 0; i < doc.segments.size(); ++i) {
    static const std::vector<ErrorCorrectionPair> kNoPairs;
    const auto& pairs = i < doc.pairs.size() ? doc.pairs[i] : kNoPairs;
    records.push_back(build_segment_record(doc.doc_id, doc.segments[i], pairs,
                                           type, templates));
  }
  return records;
}

std::string record_to_jsonl(const PromptRecord& record) {
  ordered_json j;
  j["doc_id"] = record.doc_id;
  if (record.segment_index) j["segment_index"] = *record.segment_index;
  j["prompt"] = record.prompt;
  j["target"] = record.target;
  j["prompt_type"] = prompt_type_name(record.type);
  return dump(j);
}

PromptRecord record_from_jsonl(std::string_view line) {
  try {
    const ordered_json j = ordered_json::parse(line);
    PromptRecord r;
    r.doc_id = j.at("doc_id").get<std::string>();
    if (j.contains("segment_index")) {
      r.segment_index = j.at("segment_index").get<std::size_t>();
    }
    r.prompt = j.at("prompt").get<std::string>();
    r.target = j.at("target").get<std::string>();
    r.type = parse_prompt_type(j.at("prompt_type").get<std::string>());
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedJson,
                std::string("bad dataset record: ") + e.what());
  }
}

std::size_t emit_dataset(std::ostream& out,
                         const std::vector<DocumentExtraction>& docs,
                         PromptType type, const PromptTemplates& templates) {
  std::size_t count = 0;
  for (const DocumentExtraction& doc : docs) {
    std::vector<PromptRecord> records;
    try {
      records = build_records(doc, type, templates);
    } catch (const Error& e) {
      throw Error(e.code(), "document '" + doc.doc_id + "': " + e.message());
    }
    for (const PromptRecord& r : records) {
      out << record_to_jsonl(r) << '\n';
      ++count;
    }
  }
  return count;
}

std::set<std::string> choose_validation_docs(std::vector<std::string> doc_ids,
                                             double valid_ratio,
                                             std::uint64_t seed) {
  if (valid_ratio < 0.0 || valid_ratio > 1.0) {
    throw Error(ErrorCode::kInvalidArgument, "valid_ratio must be in [0, 1]");
  }
  std::sort(doc_ids.begin(), doc_ids.end());
  std::mt19937_64 rng(seed);
  std::shuffle(doc_ids.begin(), doc_ids.end(), rng);
  const auto take = static_cast<std::size_t>(
      std::llround(valid_ratio * static_cast<double>(doc_ids.size())));
  return {doc_ids.begin(), doc_ids.begin() + std::min(take, doc_ids.size())};
}

}  // namespace ftec
