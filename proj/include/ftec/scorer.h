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

#ifndef FTEC_SCORER_H_
#define FTEC_SCORER_H_

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ftec/tokenize.h"

namespace ftec {

struct CategoryCounts {
  std::size_t n = 0;  // reference tokens
  std::size_t s = 0;
  std::size_t d = 0;
  std::size_t i = 0;

  std::size_t errors() const { return s + d + i; }
  // (S+D+I)/N; empty when N == 0. May exceed 1 when there are insertions.
  std::optional<double> error_rate() const;

  CategoryCounts& operator+=(const CategoryCounts& o);
  bool operator==(const CategoryCounts&) const = default;
};

class ScoreReport {
 public:
  const CategoryCounts& category(TokenCategory c) const;
  CategoryCounts& category(TokenCategory c);
  CategoryCounts overall() const;

  ScoreReport& operator+=(const ScoreReport& o);
  bool operator==(const ScoreReport&) const = default;

 private:
  // Indexed like kScoredCategories.
  std::array<CategoryCounts, kScoredCategories.size()> per_category_{};
};

// Token-level alignment of the two texts with each edit attributed to a
// category: S and D to the reference token's category, I to the inserted
// hypothesis token's. Never throws; an empty reference simply gives N = 0.
ScoreReport tally_pair(std::string_view ref_text, std::string_view hyp_text);

// tally_pair plus the undefined-rate check: throws Error(kEmptyReference)
// when the reference has no scorable tokens but the hypothesis does.
ScoreReport score_pair(std::string_view ref_text, std::string_view hyp_text);

// Pooled (micro-averaged) counts.
ScoreReport aggregate(const std::vector<ScoreReport>& reports);

// (finetuned - baseline) / baseline. Negative is an improvement. Throws
// Error(kZeroBaseline) when baseline_er is 0.
double error_rate_reduction(double baseline_er, double finetuned_er);

// Fraction to a percentage string with two decimals, rounding halves away
// from zero: 0.333333 -> "33.33", -0.33307 -> "-33.31".
std::string format_percent(double fraction);

// {"mandarin": {...}, "punctuation": {...}, "itn": {...}, "english": {...},
//  "overall": {...}} where each entry is {"N","S","D","I","er","er_percent"}
// and er is null when N == 0. With a baseline every entry also carries
// "err"/"err_percent" (null when the baseline rate is zero or undefined).
nlohmann::ordered_json report_to_json(
    const ScoreReport& report, const ScoreReport* baseline = nullptr);

// Reads the counts back from report_to_json output.
ScoreReport report_from_json(const nlohmann::ordered_json& j);

}  // namespace ftec

#endif  // FTEC_SCORER_H_
