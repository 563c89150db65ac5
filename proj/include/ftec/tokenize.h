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

#ifndef FTEC_TOKENIZE_H_
#define FTEC_TOKENIZE_H_

#include <array>
#include <cstddef>
#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace ftec {

// Scoring categories. Other (whitespace, emoji, unlisted scripts) is never
// emitted as a token and never counted.
enum class TokenCategory { kMandarin, kPunctuation, kItn, kEnglish, kOther };

inline constexpr std::array<TokenCategory, 4> kScoredCategories = {
    TokenCategory::kMandarin, TokenCategory::kPunctuation, TokenCategory::kItn,
    TokenCategory::kEnglish};

std::string_view category_name(TokenCategory c);

// Per-code-point class, before ITN context rules are applied:
//   U+4E00..U+9FFF, U+3400..U+4DBF        -> Mandarin
//   ASCII letters                          -> English
//   ASCII digits, '$', U+FFE5 (full-width yen) -> ITN
//   listed CJK / ASCII punctuation         -> Punctuation
//   everything else                        -> Other
TokenCategory classify_char(char32_t cp);

struct Token {
  std::string text;
  TokenCategory category;
  std::size_t start;  // byte offset into the source
  std::size_t end;    // exclusive

  bool operator==(const Token&) const = default;
};

// Mandarin tokens are single ideographs, English tokens are maximal ASCII
// letter runs, ITN tokens are maximal runs of digits and bound ITN symbols,
// punctuation tokens are single marks. Other code points are skipped.
//
// Symbol binding: '.' and ':' bind between two digits ("3.5", "10:30"),
// '-' binds before a digit ("-5", "1-2"), '%' binds after a digit ("50%").
// Unbound '.' and ':' are punctuation; unbound '-' and '%' are Other.
std::vector<Token> tokenize_text(std::string_view text);

class Lexicon {
 public:
  Lexicon() = default;
  explicit Lexicon(const std::vector<std::string>& words);

  // One word per line, UTF-8. Blank lines and lines starting with '#' are
  // skipped. Only the first whitespace-separated field is used, so
  // "word freq tag" dictionaries load as-is.
  static Lexicon load(std::istream& in);
  static Lexicon load_file(const std::filesystem::path& path);

  bool contains(std::string_view word) const;
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  // Longest entry in code points; 0 for an empty lexicon.
  std::size_t max_word_len() const { return max_word_len_; }

 private:
  void add(std::string word);

  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>{}(s);
    }
  };
  std::unordered_set<std::string, Hash, std::equal_to<>> entries_;
  std::size_t max_word_len_ = 0;
};

// Forward maximum matching with single-character fallback. The join of the
// result always equals `text`.
std::vector<std::string> segment_words(std::string_view text,
                                       const Lexicon& lexicon);

}  // namespace ftec

#endif  // FTEC_TOKENIZE_H_
