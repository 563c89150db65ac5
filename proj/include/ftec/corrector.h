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

#ifndef FTEC_CORRECTOR_H_
#define FTEC_CORRECTOR_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ftec/extractor.h"

namespace ftec {

enum class CorrectionScope { kArticle, kSegment };

// error -> correction, in insertion order.
using CorrectionMap = std::vector<std::pair<std::string, std::string>>;

struct CorrectionSet {
  // Exactly one entry for segment scope; entry i belongs to segment i for
  // article scope.
  std::vector<CorrectionMap> per_segment;

  std::size_t pair_count() const;
  bool operator==(const CorrectionSet&) const = default;
};

// Accepts raw model output. Text before the first '{' or '[' and after the
// last matching closer is discarded, so code fences and chatter are
// tolerated. Segment scope expects one object of string -> string, article
// scope an array of such objects.
//
// Throws Error(kMalformedJson) when nothing parses or the schema is wrong,
// Error(kScopeMismatch) when an object arrives for article scope or an
// array for segment scope.
CorrectionSet parse_correction_json(std::string_view raw,
                                    CorrectionScope scope);

// Compact UTF-8 JSON in the same schema; parse(serialize(x)) == x.
std::string serialize_correction_json(const CorrectionSet& set,
                                      CorrectionScope scope);

CorrectionMap to_correction_map(const std::vector<ErrorCorrectionPair>& pairs);
CorrectionSet to_correction_set(
    const std::vector<std::vector<ErrorCorrectionPair>>& per_segment);

struct NotFound {
  std::size_t segment_index;
  std::string error;

  bool operator==(const NotFound&) const = default;
};

struct Ambiguous {
  std::size_t segment_index;
  std::string error;
  std::size_t occurrences;

  bool operator==(const Ambiguous&) const = default;
};

struct ApplyReport {
  std::size_t applied = 0;
  std::vector<NotFound> not_found;
  std::vector<Ambiguous> ambiguous;

  std::size_t total() const {
    return applied + not_found.size() + ambiguous.size();
  }
};

struct ApplyResult {
  std::vector<std::string> segments;
  ApplyReport report;
};

// Applies each mapping to its segment, pair by pair in mapping order,
// against the progressively corrected text. A pair is applied only when its
// error occurs exactly once at that moment. Throws
// Error(kSegmentCountMismatch) when there are more mappings than segments.
ApplyResult apply_corrections(const std::vector<std::string>& hyp_segments,
                              const CorrectionSet& set);

}  // namespace ftec

#endif  // FTEC_CORRECTOR_H_
