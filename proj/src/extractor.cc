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

#include "ftec/extractor.h"

#include <algorithm>
#include <string_view>

#include "ftec/align.h"
#include "ftec/utf8.h"

namespace ftec {

namespace {

// Half-open range of alignment op indices.
struct Span {
  std::size_t begin;
  std::size_t end;
};

enum class Outcome { kResolved, kUnresolved, kNoOp };

struct Settled {
  Span span;
  Outcome outcome;
};

class SegmentExtractor {
 public:
  SegmentExtractor(const SegmentPair& segment, const Lexicon& lexicon,
                   const ExtractorOptions& options)
      : segment_(segment),
        options_(options),
        ref_words_(segment_words(segment.ref_text, lexicon)),
        hyp_words_(segment_words(segment.hyp_text, lexicon)),
        alignment_(align(ref_words_, hyp_words_)) {
    const auto& ops = alignment_.ops;
    op_ref_.reserve(ops.size());
    op_hyp_.reserve(ops.size());
    for (const EditOp& op : ops) {
      op_ref_.push_back(op.ref.empty() ? std::string_view()
                                       : ref_words_[op.ref.begin]);
      op_hyp_.push_back(op.hyp.empty() ? std::string_view()
                                       : hyp_words_[op.hyp.begin]);
    }
  }

  SegmentExtraction run() {
    const std::vector<Span> groups = error_groups();
    std::size_t next = 0;
    while (next < groups.size()) {
      Span span = groups[next++];
      fold(span);
      settle(span, groups, next);
    }

    SegmentExtraction out;
    for (const Settled& s : settled_) {
      if (s.outcome == Outcome::kResolved) {
        out.pairs.push_back(ErrorCorrectionPair{
            segment_.index, error_of(s.span), correction_of(s.span)});
      } else if (s.outcome == Outcome::kUnresolved) {
        out.unresolved.push_back(
            UnresolvedPair{segment_.index, hyp_offset(s.span.begin),
                           error_of(s.span), correction_of(s.span)});
      }
    }
    return out;
  }

 private:
  std::size_t op_count() const { return alignment_.ops.size(); }

  bool is_match(std::size_t k) const {
    return alignment_.ops[k].kind == EditKind::kMatch;
  }

  // Maximal runs of non-match ops, merged when separated by fewer than
  // merge_gap matches.
  std::vector<Span> error_groups() const {
    std::vector<Span> groups;
    for (std::size_t k = 0; k < op_count();) {
      if (is_match(k)) {
        ++k;
        continue;
      }
      const std::size_t begin = k;
      while (k < op_count() && !is_match(k)) ++k;
      if (!groups.empty() && begin - groups.back().end < options_.merge_gap) {
        groups.back().end = k;
      } else {
        groups.push_back({begin, k});
      }
    }
    return groups;
  }

  bool all_of_kind(Span s, EditKind kind) const {
    for (std::size_t k = s.begin; k < s.end; ++k) {
      if (alignment_.ops[k].kind != kind) return false;
    }
    return true;
  }

  // Turns pure insertions and deletions into substitutions by taking in a
  // neighbouring word.
  void fold(Span& s) const {
    if (all_of_kind(s, EditKind::kInsert)) {
      if (s.begin > 0) {
        --s.begin;
      } else if (s.end < op_count()) {
        ++s.end;
      }
    } else if (all_of_kind(s, EditKind::kDelete)) {
      if (s.end < op_count()) {
        ++s.end;
      } else if (s.begin > 0) {
        --s.begin;
      }
    }
  }

  bool grow(Span& s) const {
    if (s.end < op_count()) {
      ++s.end;
      return true;
    }
    if (s.begin > 0) {
      --s.begin;
      return true;
    }
    return false;
  }

  void settle(Span span, const std::vector<Span>& groups, std::size_t& next) {
    for (;;) {
      while (next < groups.size() && groups[next].begin < span.end) {
        span.end = std::max(span.end, groups[next].end);
        ++next;
      }
      if (!settled_.empty() && settled_.back().span.end > span.begin) {
        span.begin = std::min(span.begin, settled_.back().span.begin);
        span.end = std::max(span.end, settled_.back().span.end);
        settled_.pop_back();
        continue;
      }

      const std::string error = error_of(span);
      if (error == correction_of(span)) {
        settled_.push_back({span, Outcome::kNoOp});
        return;
      }
      if (length_of(span, error) < options_.min_error_len && grow(span)) {
        continue;
      }
      if (!error.empty() && is_unique(span, error)) {
        settled_.push_back({span, Outcome::kResolved});
        return;
      }
      if (!error.empty() && utf8::char_count(error) < options_.uniqueness_cap &&
          grow(span)) {
        continue;
      }
      settled_.push_back({span, Outcome::kUnresolved});
      return;
    }
  }

  std::size_t length_of(Span s, const std::string& error) const {
    if (options_.length_unit == LengthUnit::kCharacters) {
      return utf8::char_count(error);
    }
    std::size_t words = 0;
    for (std::size_t k = s.begin; k < s.end; ++k) {
      if (!op_hyp_[k].empty()) ++words;
    }
    return words;
  }

  // Hypothesis text as the corrector sees it when this span's pair is
  // applied: settled pairs before it already replaced, the rest untouched.
  std::string progressive_text(Span s) const {
    std::string text;
    std::size_t k = 0;
    for (const Settled& prev : settled_) {
      for (; k < prev.span.begin; ++k) text.append(op_ref_[k]);
      text += prev.outcome == Outcome::kUnresolved ? error_of(prev.span)
                                                   : correction_of(prev.span);
      k = prev.span.end;
    }
    for (; k < s.begin; ++k) text.append(op_ref_[k]);
    for (; k < op_count(); ++k) text.append(op_hyp_[k]);
    return text;
  }

  bool is_unique(Span s, const std::string& error) const {
    return utf8::count_occurrences(segment_.hyp_text, error) == 1 &&
           utf8::count_occurrences(progressive_text(s), error) == 1;
  }

  std::string error_of(Span s) const {
    std::string out;
    for (std::size_t k = s.begin; k < s.end; ++k) out.append(op_hyp_[k]);
    return out;
  }

  std::string correction_of(Span s) const {
    std::string out;
    for (std::size_t k = s.begin; k < s.end; ++k) out.append(op_ref_[k]);
    return out;
  }

  std::size_t hyp_offset(std::size_t op_index) const {
    std::size_t offset = 0;
    for (std::size_t k = 0; k < op_index; ++k) offset += op_hyp_[k].size();
    return offset;
  }

  const SegmentPair& segment_;
  const ExtractorOptions& options_;
  std::vector<std::string> ref_words_;
  std::vector<std::string> hyp_words_;
  Alignment alignment_;
  std::vector<std::string_view> op_ref_;
  std::vector<std::string_view> op_hyp_;
  // Ordered, non-overlapping.
  std::vector<Settled> settled_;
};

}  // namespace

SegmentExtraction extract_pairs(const SegmentPair& segment,
                                const Lexicon& lexicon,
                                const ExtractorOptions& options) {
  return SegmentExtractor(segment, lexicon, options).run();
}

std::size_t DocumentExtraction::pair_count() const {
  std::size_t n = 0;
  for (const auto& p : pairs) n += p.size();
  return n;
}

DocumentExtraction pair_manifest(const DocumentPair& doc,
                                 const Lexicon& lexicon,
                                 const ExtractorOptions& options,
                                 const SegmenterOptions& seg_options) {
  DocumentExtraction out;
  out.doc_id = doc.doc_id;
  out.segments = split_segments(doc.ref_text, doc.hyp_text, seg_options);
  out.pairs.reserve(out.segments.size());
  for (const SegmentPair& seg : out.segments) {
    SegmentExtraction ex = extract_pairs(seg, lexicon, options);
    out.pairs.push_back(std::move(ex.pairs));
    out.unresolved.insert(out.unresolved.end(),
                          std::make_move_iterator(ex.unresolved.begin()),
                          std::make_move_iterator(ex.unresolved.end()));
  }
  return out;
}

std::vector<DocumentExtraction> pair_manifest(
    const std::vector<DocumentPair>& docs, const Lexicon& lexicon,
    const ExtractorOptions& options, const SegmenterOptions& seg_options) {
  std::vector<DocumentExtraction> out;
  out.reserve(docs.size());
  for (const DocumentPair& doc : docs) {
    out.push_back(pair_manifest(doc, lexicon, options, seg_options));
  }
  return out;
}

}  // namespace ftec
