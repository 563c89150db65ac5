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

#ifndef FTEC_MANIFEST_H_
#define FTEC_MANIFEST_H_

#include <array>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ftec/segmenter.h"

namespace ftec {

// "hard" marks hypotheses transcribed from noise-degraded audio. The audio
// itself is produced upstream; here it is only a tag.
enum class Condition { kClean, kHard };

enum class Split { kTrain, kTestHomogeneous, kTestUpToDate, kTestHard };

inline constexpr std::array<Split, 4> kSplits = {
    Split::kTrain, Split::kTestHomogeneous, Split::kTestUpToDate,
    Split::kTestHard};

std::string_view condition_name(Condition c);
std::string_view split_name(Split s);
Condition parse_condition(std::string_view name);
Split parse_split(std::string_view name);

struct ManifestRecord {
  std::string doc_id;
  std::optional<std::filesystem::path> ref_path;  // absolute after loading
  std::optional<std::string> ref_text;
  std::string hyp_text;
  Condition condition = Condition::kClean;
  Split split = Split::kTrain;
};

struct CorpusManifest {
  std::vector<ManifestRecord> records;
};

// JSONL, one object per line:
//   {"doc_id", "ref_path" | "ref_text", "hyp_text", "condition", "split"}
// Relative ref_path values resolve against `base_dir`. Throws
// Error(kInvalidManifest) naming the line for structural problems:
// bad JSON, missing or mistyped fields, unknown condition/split values,
// both or neither reference field, duplicate doc_id.
CorpusManifest parse_manifest(std::istream& in,
                              const std::filesystem::path& base_dir = {});
CorpusManifest load_manifest(const std::filesystem::path& path);

// Reads the reference, inline or from disk (trailing line breaks of a file
// are dropped). Throws Error(kIo) when the file cannot be read.
DocumentPair resolve_document(const ManifestRecord& record);

}  // namespace ftec

#endif  // FTEC_MANIFEST_H_
