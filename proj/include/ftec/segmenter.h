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

#ifndef FTEC_SEGMENTER_H_
#define FTEC_SEGMENTER_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace ftec {

struct SegmentPair {
  std::size_t index = 0;
  std::string ref_text;
  std::string hyp_text;

  bool operator==(const SegmentPair&) const = default;
};

struct SegmenterOptions {
  // Each entry is one code point, UTF-8 encoded.
  std::vector<std::string> terminal_marks = {"。", "？", "！"};
  // Closing quotes directly after a terminal mark stay with the left segment.
  std::vector<std::string> closing_quotes = {"”", "’", "」", "』", "\"", "'"};
};

// Splits a document pair at co-terminal points: places where a reference
// terminal mark is aligned (Match or Substitute, character level) with a
// hypothesis terminal mark. Splits are taken greedily left to right. Any
// remainder becomes a final segment; a remainder that is empty on one side
// only is folded into the previous segment.
std::vector<SegmentPair> split_segments(
    std::string_view ref_text, std::string_view hyp_text,
    const SegmenterOptions& options = SegmenterOptions());

// True if `text` ends with a terminal mark, optionally followed by closing
// quotes.
bool ends_with_terminal(std::string_view text,
                        const SegmenterOptions& options = SegmenterOptions());

struct DocumentPair {
  std::string doc_id;
  std::string ref_text;
  std::string hyp_text;
};

// Power-of-two buckets over character length: bucket k holds lengths in
// [2^k, 2^(k+1)). Length 0 lands in a dedicated bucket with lo = hi = 0.
struct LengthBucket {
  std::size_t lo = 0;
  std::size_t hi = 0;  // exclusive
  std::size_t count = 0;

  bool operator==(const LengthBucket&) const = default;
};

struct LengthHistogram {
  std::vector<LengthBucket> buckets;  // ascending, only non-empty buckets
  std::size_t total = 0;
  std::size_t min = 0;
  std::size_t max = 0;
  std::size_t sum = 0;

  double mean() const { return total == 0 ? 0.0 : double(sum) / total; }
  void add(std::size_t length);
  void merge(const LengthHistogram& other);
};

struct CorpusStats {
  std::size_t article_count = 0;
  std::size_t segment_count = 0;
  // Lengths are reference-side character counts.
  LengthHistogram article_lengths;
  LengthHistogram segment_lengths;

  void add_document(std::string_view ref_text,
                    const std::vector<SegmentPair>& segments);
  void merge(const CorpusStats& other);
};

CorpusStats corpus_stats(const std::vector<DocumentPair>& docs,
                         const SegmenterOptions& options = SegmenterOptions());

}  // namespace ftec

#endif  // FTEC_SEGMENTER_H_
