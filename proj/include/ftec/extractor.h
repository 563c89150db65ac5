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

#ifndef FTEC_EXTRACTOR_H_
#define FTEC_EXTRACTOR_H_

#include <cstddef>
#include <string>
#include <vector>

#include "ftec/segmenter.h"
#include "ftec/tokenize.h"

namespace ftec {

struct ErrorCorrectionPair {
  std::size_t segment_index = 0;
  std::string error;       // substring of the hypothesis segment
  std::string correction;  // substring of the reference segment

  bool operator==(const ErrorCorrectionPair&) const = default;
};

// An error region that could not be made unique within the cap. It is not
// emitted as a pair, so its segment will not round-trip.
struct UnresolvedPair {
  std::size_t segment_index = 0;
  std::size_t hyp_offset = 0;  // byte offset of `error` in the hyp segment
  std::string error;
  std::string correction;

  bool operator==(const UnresolvedPair&) const = default;
};

enum class LengthUnit { kCharacters, kWords };

struct ExtractorOptions {
  std::size_t min_error_len = 4;
  LengthUnit length_unit = LengthUnit::kCharacters;
  // Uniqueness padding stops once the error reaches this many characters.
  std::size_t uniqueness_cap = 16;
  // Error runs separated by fewer matched words than this are merged.
  std::size_t merge_gap = 2;
};

struct SegmentExtraction {
  std::vector<ErrorCorrectionPair> pairs;
  std::vector<UnresolvedPair> unresolved;
};

// Word-level alignment of the segment followed by padding:
//  * insertions attach to the preceding hypothesis word (the following one
//    at segment start), deletions to the following word (preceding at end);
//  * errors shorter than min_error_len grow with following words, then
//    preceding words once the segment end is reached;
//  * errors that are not unique grow the same way up to uniqueness_cap.
// An error is unique when it occurs exactly once both in the original
// hypothesis and in the hypothesis with all earlier pairs applied, so
// applying the pairs in order with exactly-once matching reproduces the
// reference whenever nothing is unresolved.
SegmentExtraction extract_pairs(const SegmentPair& segment,
                                const Lexicon& lexicon,
                                const ExtractorOptions& options = {});

struct DocumentExtraction {
  std::string doc_id;
  std::vector<SegmentPair> segments;
  // One list per segment, empty for clean segments.
  std::vector<std::vector<ErrorCorrectionPair>> pairs;
  std::vector<UnresolvedPair> unresolved;

  std::size_t pair_count() const;
};

DocumentExtraction pair_manifest(const DocumentPair& doc,
                                 const Lexicon& lexicon,
                                 const ExtractorOptions& options = {},
                                 const SegmenterOptions& seg_options = {});

std::vector<DocumentExtraction> pair_manifest(
    const std::vector<DocumentPair>& docs, const Lexicon& lexicon,
    const ExtractorOptions& options = {},
    const SegmenterOptions& seg_options = {});

}  // namespace ftec

#endif  // FTEC_EXTRACTOR_H_
