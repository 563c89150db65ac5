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

#include "ftec/manifest.h"

#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ftec/error.h"

namespace ftec {

std::string_view condition_name(Condition c) {
  return c == Condition::kHard ? "hard" : "clean";
}

std::string_view split_name(Split s) {
  switch (s) {
    case Split::kTrain:
      return "train";
    case Split::kTestHomogeneous:
      return "test_homogeneous";
    case Split::kTestUpToDate:
      return "test_uptodate";
    case Split::kTestHard:
      return "test_hard";
  }
  return "";
}

Condition parse_condition(std::string_view name) {
  if (name == "clean") return Condition::kClean;
  if (name == "hard") return Condition::kHard;
  throw Error(ErrorCode::kInvalidManifest,
              "unknown condition '" + std::string(name) + "'");
}

Split parse_split(std::string_view name) {
  for (Split s : kSplits) {
    if (split_name(s) == name) return s;
  }
  throw Error(ErrorCode::kInvalidManifest,
              "unknown split '" + std::string(name) + "'");
}

CorpusManifest parse_manifest(std::istream& in,
                              const std::filesystem::path& base_dir) {
  CorpusManifest manifest;
  std::set<std::string> seen;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = "manifest line " + std::to_string(lineno) + ": ";
    ManifestRecord r;
    try {
      const auto j = nlohmann::json::parse(line);
      r.doc_id = j.at("doc_id").get<std::string>();
      r.hyp_text = j.at("hyp_text").get<std::string>();
      r.condition = parse_condition(j.at("condition").get<std::string>());
      r.split = parse_split(j.at("split").get<std::string>());
      const bool has_text = j.contains("ref_text");
      const bool has_path = j.contains("ref_path");
      if (has_text == has_path) {
        throw Error(ErrorCode::kInvalidManifest,
                    "exactly one of ref_text or ref_path is required");
      }
      if (has_text) {
        r.ref_text = j.at("ref_text").get<std::string>();
      } else {
        std::filesystem::path p = j.at("ref_path").get<std::string>();
        r.ref_path = p.is_absolute() ? p : base_dir / p;
      }
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kInvalidManifest, where + e.what());
    } catch (const Error& e) {
      throw Error(ErrorCode::kInvalidManifest, where + e.message());
    }
    if (r.doc_id.empty()) {
      throw Error(ErrorCode::kInvalidManifest, where + "empty doc_id");
    }
    if (!seen.insert(r.doc_id).second) {
      throw Error(ErrorCode::kInvalidManifest,
                  where + "duplicate doc_id '" + r.doc_id + "'");
    }
    manifest.records.push_back(std::move(r));
  }
  return manifest;
}

CorpusManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open manifest " + path.string());
  return parse_manifest(in, path.parent_path());
}

DocumentPair resolve_document(const ManifestRecord& record) {
  DocumentPair doc{record.doc_id, {}, record.hyp_text};
  if (record.ref_text) {
    doc.ref_text = *record.ref_text;
    return doc;
  }
  std::ifstream in(*record.ref_path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo,
                "cannot read reference " + record.ref_path->string());
  }
  doc.ref_text.assign(std::istreambuf_iterator<char>(in),
                      std::istreambuf_iterator<char>());
  while (!doc.ref_text.empty() &&
         (doc.ref_text.back() == '\n' || doc.ref_text.back() == '\r')) {
    doc.ref_text.pop_back();
  }
  return doc;
}

}  // namespace ftec
