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

#ifndef FTEC_PROMPTGEN_H_
#define FTEC_PROMPTGEN_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ftec/corrector.h"
#include "ftec/extractor.h"

namespace ftec {

enum class PromptType { kArticleDirect, kArticleJson, kSegDirect, kSegJson };

inline constexpr std::array<PromptType, 4> kPromptTypes = {
    PromptType::kArticleDirect, PromptType::kArticleJson,
    PromptType::kSegDirect, PromptType::kSegJson};

std::string_view prompt_type_name(PromptType t);
// Accepts article_direct | article_json | seg_direct | seg_json.
PromptType parse_prompt_type(std::string_view name);

inline bool is_article_type(PromptType t) {
  return t == PromptType::kArticleDirect || t == PromptType::kArticleJson;
}
inline bool is_json_type(PromptType t) {
  return t == PromptType::kArticleJson || t == PromptType::kSegJson;
}
inline CorrectionScope scope_of(PromptType t) {
  return is_article_type(t) ? CorrectionScope::kArticle
                            : CorrectionScope::kSegment;
}

inline constexpr std::string_view kInputPlaceholder = "{input}";

class PromptTemplates {
 public:
  // Built-in Chinese instructions, one per prompt type.
  static PromptTemplates defaults();

  // Key-value file (see kv_file.h) with keys named after the prompt types.
  // Keys not present keep their default text.
  static PromptTemplates load(std::istream& in);
  static PromptTemplates load_file(const std::filesystem::path& path);

  const std::string& get(PromptType t) const;
  void set(PromptType t, std::string text);

  // Substitutes the first {input}. Throws
  // Error(kTemplateMissingPlaceholder) if the template has none.
  std::string render(PromptType t, std::string_view input) const;

 private:
  std::array<std::string, kPromptTypes.size()> text_;
};

struct PromptRecord {
  std::string doc_id;
  std::optional<std::size_t> segment_index;  // set for Seg* types only
  PromptType type;
  std::string prompt;
  std::string target;

  bool operator==(const PromptRecord&) const = default;
};

// Hypothesis text as inserted into an Article* prompt. ArticleJson lists
// one segment per line so that the i-th output mapping lines up with the
// i-th segment; ArticleDirect uses the document text unchanged.
std::string article_input(PromptType t,
                          const std::vector<std::string>& hyp_segments);

// Seg* record. Target: the reference segment (SegDirect) or one JSON
// object of the segment's pairs (SegJson).
PromptRecord build_segment_record(std::string_view doc_id,
                                  const SegmentPair& segment,
                                  const std::vector<ErrorCorrectionPair>& pairs,
                                  PromptType type,
                                  const PromptTemplates& templates);

// Article* record. Target: the reference document (ArticleDirect) or a JSON
// array with one object per segment, empty objects included.
PromptRecord build_article_record(const DocumentExtraction& doc,
                                  PromptType type,
                                  const PromptTemplates& templates);

// One record per document for Article* types, one per segment for Seg*.
std::vector<PromptRecord> build_records(const DocumentExtraction& doc,
                                        PromptType type,
                                        const PromptTemplates& templates);

// Single JSON line, keys in fixed order:
// doc_id, segment_index (Seg* only), prompt, target, prompt_type.
std::string record_to_jsonl(const PromptRecord& record);
PromptRecord record_from_jsonl(std::string_view line);

// Writes build_records for every document, one line each. Errors are
// rethrown with the document id attached. Returns the number of records.
std::size_t emit_dataset(std::ostream& out,
                         const std::vector<DocumentExtraction>& docs,
                         PromptType type, const PromptTemplates& templates);

// Picks round(valid_ratio * n) document ids for validation with a seeded
// shuffle. The same ids, ratio and seed always give the same set.
std::set<std::string> choose_validation_docs(std::vector<std::string> doc_ids,
                                             double valid_ratio,
                                             std::uint64_t seed);

}  // namespace ftec

#endif  // FTEC_PROMPTGEN_H_
