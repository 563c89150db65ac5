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

#include "ftec/segmenter.h"

#include <algorithm>
#include <bit>

#include "ftec/align.h"
#include "ftec/utf8.h"

namespace ftec {

namespace {

bool contains(const std::vector<std::string>& set, std::string_view ch) {
  return std::find(set.begin(), set.end(), ch) != set.end();
}

// Byte offset of each character start, plus the total size at the end.
std::vector<std::size_t> char_offsets(
    const std::vector<std::string_view>& chars, std::size_t total) {
  std::vector<std::size_t> offsets;
  offsets.reserve(chars.size() + 1);
  std::size_t pos = 0;
  for (auto ch : chars) {
    offsets.push_back(pos);
    pos += ch.size();
  }
  offsets.push_back(total);
  return offsets;
}

}  // namespace

std::vector<SegmentPair> split_segments(std::string_view ref_text,
                                        std::string_view hyp_text,
                                        const SegmenterOptions& options) {
  const auto ref_chars = utf8::split_chars(ref_text);
  const auto hyp_chars = utf8::split_chars(hyp_text);
  const auto ref_off = char_offsets(ref_chars, ref_text.size());
  const auto hyp_off = char_offsets(hyp_chars, hyp_text.size());
  const Alignment alignment = align(ref_chars, hyp_chars);

  auto is_terminal = [&](std::string_view ch) {
    return contains(options.terminal_marks, ch);
  };
  auto skip_quotes = [&](const std::vector<std::string_view>& chars,
                         std::size_t pos) {
    while (pos < chars.size() && contains(options.closing_quotes, chars[pos])) {
      ++pos;
    }
    return pos;
  };

  std::vector<SegmentPair> segments;
  // Character indices where the current segment starts.
  std::size_t ref_start = 0;
  std::size_t hyp_start = 0;
  auto emit = [&](std::size_t ref_end, std::size_t hyp_end) {
    segments.push_back(SegmentPair{
        segments.size(),
        std::string(ref_text.substr(ref_off[ref_start],
                                    ref_off[ref_end] - ref_off[ref_start])),
        std::string(hyp_text.substr(hyp_off[hyp_start],
                                    hyp_off[hyp_end] - hyp_off[hyp_start]))});
    ref_start = ref_end;
    hyp_start = hyp_end;
  };

  for (const EditOp& op : alignment.ops) {
    if (op.kind != EditKind::kMatch && op.kind != EditKind::kSubstitute) {
      continue;
    }
    const std::size_t r = op.ref.begin;
    const std::size_t h = op.hyp.begin;
    // Both marks must lie beyond the previous boundary (quote skipping can
    // move a boundary past later alignment columns).
    if (r < ref_start || h < hyp_start) continue;
    if (!is_terminal(ref_chars[r]) || !is_terminal(hyp_chars[h])) continue;
    emit(skip_quotes(ref_chars, r + 1), skip_quotes(hyp_chars, h + 1));
  }

  const bool ref_rest = ref_start < ref_chars.size();
  const bool hyp_rest = hyp_start < hyp_chars.size();
  if (ref_rest && hyp_rest) {
    emit(ref_chars.size(), hyp_chars.size());
  } else if (ref_rest || hyp_rest) {
    if (segments.empty()) {
      emit(ref_chars.size(), hyp_chars.size());
    } else {
      SegmentPair& last = segments.back();
      last.ref_text.append(ref_text.substr(ref_off[ref_start]));
      last.hyp_text.append(hyp_text.substr(hyp_off[hyp_start]));
    }
  }
  return segments;
}

bool ends_with_terminal(std::string_view text,
                        const SegmenterOptions& options) {
  auto chars = utf8::split_chars(text);
  while (!chars.empty() && contains(options.closing_quotes, chars.back())) {
    chars.pop_back();
  }
  return !chars.empty() && contains(options.terminal_marks, chars.back());
}

void LengthHistogram::add(std::size_t length) {
  const std::size_t lo = length == 0 ? 0 : std::bit_floor(length);
  const std::size_t hi = length == 0 ? 0 : lo * 2;
  auto it = std::lower_bound(
      buckets.begin(), buckets.end(), lo,
      [](const LengthBucket& b, std::size_t v) { return b.lo < v; });
  if (it == buckets.end() || it->lo != lo) {
    it = buckets.insert(it, LengthBucket{lo, hi, 0});
  }
  ++it->count;
  min = total == 0 ? length : std::min(min, length);
  max = total == 0 ? length : std::max(max, length);
  ++total;
  sum += length;
}

void LengthHistogram::merge(const LengthHistogram& other) {
  if (other.total == 0) return;
  for (const LengthBucket& b : other.buckets) {
    auto it = std::lower_bound(
        buckets.begin(), buckets.end(), b.lo,
        [](const LengthBucket& x, std::size_t v) { return x.lo < v; });
    if (it == buckets.end() || it->lo != b.lo) {
      it = buckets.insert(it, LengthBucket{b.lo, b.hi, 0});
    }
    it->count += b.count;
  }
  min = total == 0 ? other.min : std::min(min, other.min);
  max = total == 0 ? other.max : std::max(max, other.max);
  total += other.total;
  sum += other.sum;
}

void CorpusStats::add_document(std::string_view ref_text,
                               const std::vector<SegmentPair>& segments) {
  ++article_count;
  article_lengths.add(utf8::char_count(ref_text));
  segment_count += segments.size();
  for (const SegmentPair& seg : segments) {
    segment_lengths.add(utf8::char_count(seg.ref_text));
  }
}

void CorpusStats::merge(const CorpusStats& other) {
  article_count += other.article_count;
  segment_count += other.segment_count;
  article_lengths.merge(other.article_lengths);
  segment_lengths.merge(other.segment_lengths);
}

CorpusStats corpus_stats(const std::vector<DocumentPair>& docs,
                         const SegmenterOptions& options) {
  CorpusStats stats;
  for (const DocumentPair& doc : docs) {
    stats.add_document(doc.ref_text,
                       split_segments(doc.ref_text, doc.hyp_text, options));
  }
  return stats;
}

}  // namespace ftec
