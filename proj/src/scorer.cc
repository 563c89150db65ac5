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

#include "ftec/scorer.h"

#include <cmath>
#include <cstdio>

#include "ftec/align.h"
#include "ftec/error.h"

namespace ftec {

namespace {

std::size_t slot(TokenCategory c) {
  switch (c) {
    case TokenCategory::kMandarin:
      return 0;
    case TokenCategory::kPunctuation:
      return 1;
    case TokenCategory::kItn:
      return 2;
    case TokenCategory::kEnglish:
      return 3;
    case TokenCategory::kOther:
      break;
  }
  throw Error(ErrorCode::kInvalidArgument, "Other is not a scored category");
}

nlohmann::ordered_json counts_to_json(const CategoryCounts& c,
                                      const CategoryCounts* baseline) {
  nlohmann::ordered_json j;
  j["N"] = c.n;
  j["S"] = c.s;
  j["D"] = c.d;
  j["I"] = c.i;
  const auto er = c.error_rate();
  j["er"] = er ? nlohmann::ordered_json(*er) : nlohmann::ordered_json();
  j["er_percent"] =
      er ? nlohmann::ordered_json(format_percent(*er)) : nlohmann::ordered_json();
  if (baseline != nullptr) {
    const auto base = baseline->error_rate();
    if (er && base && *base > 0.0) {
      const double err = error_rate_reduction(*base, *er);
      j["err"] = err;
      j["err_percent"] = format_percent(err);
    } else {
      j["err"] = nullptr;
      j["err_percent"] = nullptr;
    }
  }
  return j;
}

CategoryCounts counts_from_json(const nlohmann::ordered_json& j) {
  CategoryCounts c;
  c.n = j.at("N").get<std::size_t>();
  c.s = j.at("S").get<std::size_t>();
  c.d = j.at("D").get<std::size_t>();
  c.i = j.at("I").get<std::size_t>();
  return c;
}

}  // namespace

std::optional<double> CategoryCounts::error_rate() const {
  if (n == 0) return std::nullopt;
  return static_cast<double>(errors()) / static_cast<double>(n);
}

CategoryCounts& CategoryCounts::operator+=(const CategoryCounts& o) {
  n += o.n;
  s += o.s;
  d += o.d;
  i += o.i;
  return *this;
}

const CategoryCounts& ScoreReport::category(TokenCategory c) const {
  return per_category_[slot(c)];
}

CategoryCounts& ScoreReport::category(TokenCategory c) {
  return per_category_[slot(c)];
}

CategoryCounts ScoreReport::overall() const {
  CategoryCounts total;
  for (const auto& c : per_category_) total += c;
  return total;
}

ScoreReport& ScoreReport::operator+=(const ScoreReport& o) {
  for (std::size_t k = 0; k < per_category_.size(); ++k) {
    per_category_[k] += o.per_category_[k];
  }
  return *this;
}

ScoreReport tally_pair(std::string_view ref_text, std::string_view hyp_text) {
  const std::vector<Token> ref = tokenize_text(ref_text);
  const std::vector<Token> hyp = tokenize_text(hyp_text);
  const Alignment alignment =
      align(std::span<const Token>(ref), std::span<const Token>(hyp),
            [](const Token& a, const Token& b) { return a.text == b.text; });

  ScoreReport report;
  for (const EditOp& op : alignment.ops) {
    if (op.kind == EditKind::kInsert) {
      ++report.category(hyp[op.hyp.begin].category).i;
      continue;
    }
    CategoryCounts& c = report.category(ref[op.ref.begin].category);
    ++c.n;
    if (op.kind == EditKind::kSubstitute) ++c.s;
    if (op.kind == EditKind::kDelete) ++c.d;
  }
  return report;
}

ScoreReport score_pair(std::string_view ref_text, std::string_view hyp_text) {
  ScoreReport report = tally_pair(ref_text, hyp_text);
  const CategoryCounts total = report.overall();
  if (total.n == 0 && total.i > 0) {
    throw Error(ErrorCode::kEmptyReference,
                "reference has no scorable tokens; error rate is undefined");
  }
  return report;
}

ScoreReport aggregate(const std::vector<ScoreReport>& reports) {
  ScoreReport total;
  for (const auto& r : reports) total += r;
  return total;
}

double error_rate_reduction(double baseline_er, double finetuned_er) {
  if (baseline_er == 0.0) {
    throw Error(ErrorCode::kZeroBaseline, "baseline error rate is zero");
  }
  if (baseline_er < 0.0 || finetuned_er < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "error rates must be >= 0");
  }
  return (finetuned_er - baseline_er) / baseline_er;
}

std::string format_percent(double fraction) {
  const double hundredths = fraction * 10000.0;
  // The nudge keeps values like 12.345 (stored as 12.34499...) rounding up.
  double rounded = std::round(hundredths + std::copysign(1e-7, hundredths));
  if (rounded == 0.0) rounded = 0.0;  // no "-0.00"
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", rounded / 100.0);
  return buf;
}

nlohmann::ordered_json report_to_json(const ScoreReport& report,
                                      const ScoreReport* baseline) {
  nlohmann::ordered_json j;
  for (TokenCategory c : kScoredCategories) {
    j[std::string(category_name(c))] = counts_to_json(
        report.category(c), baseline ? &baseline->category(c) : nullptr);
  }
  const CategoryCounts base_overall =
      baseline ? baseline->overall() : CategoryCounts{};
  j["overall"] =
      counts_to_json(report.overall(), baseline ? &base_overall : nullptr);
  return j;
}

ScoreReport report_from_json(const nlohmann::ordered_json& j) {
  ScoreReport report;
  try {
    for (TokenCategory c : kScoredCategories) {
      report.category(c) = counts_from_json(j.at(std::string(category_name(c))));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedJson,
                std::string("bad score report: ") + e.what());
  }
  return report;
}

}  // namespace ftec
