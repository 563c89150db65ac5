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

#include "ftec/corrector.h"

#include <json.hpp>

#include "ftec/error.h"
#include "ftec/utf8.h"

namespace ftec {

namespace {

using ordered_json = nlohmann::ordered_json;

// Slices from the first opener to the last closer of the same kind.
std::string_view strip_decoration(std::string_view raw) {
  const std::size_t open = raw.find_first_of("{[");
  if (open == std::string_view::npos) {
    throw Error(ErrorCode::kMalformedJson, "no JSON object or array found");
  }
  const char closer = raw[open] == '{' ? '}' : ']';
  const std::size_t close = raw.rfind(closer);
  if (close == std::string_view::npos || close < open) {
    throw Error(ErrorCode::kMalformedJson, "unterminated JSON value");
  }
  return raw.substr(open, close - open + 1);
}

CorrectionMap map_from_json(const ordered_json& obj) {
  CorrectionMap map;
  for (const auto& [key, value] : obj.items()) {
    if (key.empty()) {
      throw Error(ErrorCode::kMalformedJson, "empty error string");
    }
    if (!value.is_string()) {
      throw Error(ErrorCode::kMalformedJson,
                  "correction for '" + key + "' is not a string");
    }
    map.emplace_back(key, value.get<std::string>());
  }
  return map;
}

ordered_json map_to_json(const CorrectionMap& map) {
  ordered_json obj = ordered_json::object();
  for (const auto& [error, correction] : map) obj[error] = correction;
  return obj;
}

}  // namespace

std::size_t CorrectionSet::pair_count() const {
  std::size_t n = 0;
  for (const auto& m : per_segment) n += m.size();
  return n;
}

CorrectionSet parse_correction_json(std::string_view raw,
                                    CorrectionScope scope) {
  const std::string_view body = strip_decoration(raw);
  ordered_json doc;
  try {
    doc = ordered_json::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kMalformedJson, e.what());
  }

  CorrectionSet set;
  if (scope == CorrectionScope::kSegment) {
    if (doc.is_array()) {
      throw Error(ErrorCode::kScopeMismatch,
                  "array where a segment object was expected");
    }
    set.per_segment.push_back(map_from_json(doc));
    return set;
  }
  if (doc.is_object()) {
    throw Error(ErrorCode::kScopeMismatch,
                "object where an article array was expected");
  }
  for (const auto& item : doc) {
    if (!item.is_object()) {
      throw Error(ErrorCode::kMalformedJson,
                  "article array element is not an object");
    }
    set.per_segment.push_back(map_from_json(item));
  }
  return set;
}

std::string serialize_correction_json(const CorrectionSet& set,
                                      CorrectionScope scope) {
  if (scope == CorrectionScope::kSegment) {
    if (set.per_segment.size() != 1) {
      throw Error(ErrorCode::kScopeMismatch,
                  "segment scope needs exactly one mapping");
    }
    return map_to_json(set.per_segment.front())
        .dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
  }
  ordered_json arr = ordered_json::array();
  for (const auto& map : set.per_segment) arr.push_back(map_to_json(map));
  return arr.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

CorrectionMap to_correction_map(const std::vector<ErrorCorrectionPair>& pairs) {
  CorrectionMap map;
  map.reserve(pairs.size());
  for (const auto& p : pairs) map.emplace_back(p.error, p.correction);
  return map;
}

CorrectionSet to_correction_set(
    const std::vector<std::vector<ErrorCorrectionPair>>& per_segment) {
  CorrectionSet set;
  set.per_segment.reserve(per_segment.size());
  for (const auto& pairs : per_segment) {
    set.per_segment.push_back(to_correction_map(pairs));
  }
  return set;
}

ApplyResult apply_corrections(const std::vector<std::string>& hyp_segments,
                              const CorrectionSet& set) {
  if (set.per_segment.size() > hyp_segments.size()) {
    throw Error(ErrorCode::kSegmentCountMismatch,
                std::to_string(set.per_segment.size()) + " mappings for " +
                    std::to_string(hyp_segments.size()) + " segments");
  }
  ApplyResult result{hyp_segments, {}};
  for (std::size_t i = 0; i < set.per_segment.size(); ++i) {
    std::string& text = result.segments[i];
    for (const auto& [error, correction] : set.per_segment[i]) {
      const std::size_t n = utf8::count_occurrences(text, error);
      if (n == 0) {
        result.report.not_found.push_back({i, error});
      } else if (n > 1) {
        result.report.ambiguous.push_back({i, error, n});
      } else {
        text.replace(text.find(error), error.size(), correction);
        ++result.report.applied;
      }
    }
  }
  return result;
}

}  // namespace ftec
