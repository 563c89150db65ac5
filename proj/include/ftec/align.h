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

#ifndef FTEC_ALIGN_H_
#define FTEC_ALIGN_H_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ftec {

enum class EditKind { kMatch, kSubstitute, kInsert, kDelete };

struct IndexRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool empty() const { return begin == end; }
  bool operator==(const IndexRange&) const = default;
};

// One step of an edit script. Insert has an empty ref range positioned at
// the reference index it precedes; Delete likewise on the hyp side.
struct EditOp {
  EditKind kind;
  IndexRange ref;
  IndexRange hyp;

  bool operator==(const EditOp&) const = default;
};

struct Alignment {
  std::vector<EditOp> ops;
  std::size_t ref_len = 0;
  std::size_t hyp_len = 0;
};

struct EditCounts {
  std::size_t substitutions = 0;
  std::size_t deletions = 0;
  std::size_t insertions = 0;
  std::size_t matches = 0;

  std::size_t errors() const { return substitutions + deletions + insertions; }
  bool operator==(const EditCounts&) const = default;
};

EditCounts edit_counts(const Alignment& alignment);

namespace internal {

// Bits marking which predecessor moves reach a DP cell at minimum cost.
inline constexpr std::uint8_t kMoveMatch = 1;
inline constexpr std::uint8_t kMoveSubstitute = 2;
inline constexpr std::uint8_t kMoveDelete = 4;
inline constexpr std::uint8_t kMoveInsert = 8;

}  // namespace internal

// Unit-cost Levenshtein alignment. The full (|ref|+1) x (|hyp|+1) move table
// is kept (one byte per cell); costs use two rolling rows. When several
// moves are optimal the backtrace prefers Match, then Substitute, then
// Delete, then Insert.
template <typename T, typename Eq = std::equal_to<>>
Alignment align(std::span<const T> ref, std::span<const T> hyp, Eq eq = {}) {
  using namespace internal;
  const std::size_t n = ref.size();
  const std::size_t m = hyp.size();
  const std::size_t width = m + 1;
  std::vector<std::uint8_t> moves((n + 1) * width, 0);
  std::vector<std::uint32_t> prev(width), cur(width);

  for (std::size_t j = 0; j <= m; ++j) {
    prev[j] = static_cast<std::uint32_t>(j);
    if (j > 0) moves[j] = kMoveInsert;
  }
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = static_cast<std::uint32_t>(i);
    moves[i * width] = kMoveDelete;
    for (std::size_t j = 1; j <= m; ++j) {
      const bool same = eq(ref[i - 1], hyp[j - 1]);
      const std::uint32_t diag = prev[j - 1] + (same ? 0 : 1);
      const std::uint32_t up = prev[j] + 1;
      const std::uint32_t left = cur[j - 1] + 1;
      const std::uint32_t best = std::min({diag, up, left});
      std::uint8_t mask = 0;
      if (diag == best) mask |= same ? kMoveMatch : kMoveSubstitute;
      if (up == best) mask |= kMoveDelete;
      if (left == best) mask |= kMoveInsert;
      cur[j] = best;
      moves[i * width + j] = mask;
    }
    std::swap(prev, cur);
  }

  Alignment out;
  out.ref_len = n;
  out.hyp_len = m;
  out.ops.reserve(n + m);
  std::size_t i = n;
  std::size_t j = m;
  while (i > 0 || j > 0) {
    const std::uint8_t mask = moves[i * width + j];
    if (mask & kMoveMatch) {
      out.ops.push_back({EditKind::kMatch, {i - 1, i}, {j - 1, j}});
      --i;
      --j;
    } else if (mask & kMoveSubstitute) {
      out.ops.push_back({EditKind::kSubstitute, {i - 1, i}, {j - 1, j}});
      --i;
      --j;
    } else if (mask & kMoveDelete) {
      out.ops.push_back({EditKind::kDelete, {i - 1, i}, {j, j}});
      --i;
    } else {
      out.ops.push_back({EditKind::kInsert, {i, i}, {j - 1, j}});
      --j;
    }
  }
  std::reverse(out.ops.begin(), out.ops.end());
  return out;
}

Alignment align(const std::vector<std::string>& ref,
                const std::vector<std::string>& hyp);

Alignment align(const std::vector<std::string_view>& ref,
                const std::vector<std::string_view>& hyp);

}  // namespace ftec

#endif  // FTEC_ALIGN_H_
