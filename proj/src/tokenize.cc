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

#include "ftec/tokenize.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "ftec/error.h"
#include "ftec/utf8.h"

namespace ftec {

namespace {

bool is_ascii_digit(char32_t cp) { return cp >= U'0' && cp <= U'9'; }

bool is_ascii_letter(char32_t cp) {
  return (cp >= U'a' && cp <= U'z') || (cp >= U'A' && cp <= U'Z');
}

bool is_punctuation(char32_t cp) {
  switch (cp) {
    // CJK
    case U'。':
    case U'？':
    case U'！':
    case U'，':
    case U'、':
    case U'；':
    case U'：':
    case U'“':
    case U'”':
    case U'‘':
    case U'’':
    case U'（':
    case U'）':
    case U'《':
    case U'》':
    // ASCII
    case U'.':
    case U',':
    case U'?':
    case U'!':
    case U';':
    case U':':
    case U'"':
    case U'\'':
    case U'(':
    case U')':
      return true;
    default:
      return false;
  }
}

// Symbols that join an ITN run only in digit context.
enum class Binding { kNone, kBetweenDigits, kBeforeDigit, kAfterDigit };

Binding itn_binding(char32_t cp) {
  switch (cp) {
    case U'.':
    case U':':
      return Binding::kBetweenDigits;
    case U'-':
      return Binding::kBeforeDigit;
    case U'%':
      return Binding::kAfterDigit;
    default:
      return Binding::kNone;
  }
}

// Resolves the category of every code point, applying the ITN binding rules.
std::vector<TokenCategory> resolve_categories(
    const std::vector<utf8::CodePoint>& cps) {
  std::vector<TokenCategory> cats(cps.size());
  auto digit_at = [&](std::size_t i) {
    return i < cps.size() && is_ascii_digit(cps[i].value);
  };
  for (std::size_t i = 0; i < cps.size(); ++i) {
    const char32_t cp = cps[i].value;
    const bool prev_digit = i > 0 && digit_at(i - 1);
    const bool next_digit = digit_at(i + 1);
    bool bound = false;
    switch (itn_binding(cp)) {
      case Binding::kBetweenDigits:
        bound = prev_digit && next_digit;
        break;
      case Binding::kBeforeDigit:
        bound = next_digit;
        break;
      case Binding::kAfterDigit:
        bound = prev_digit;
        break;
      case Binding::kNone:
        break;
    }
    cats[i] = bound ? TokenCategory::kItn : classify_char(cp);
  }
  return cats;
}

bool is_run_category(TokenCategory c) {
  return c == TokenCategory::kItn || c == TokenCategory::kEnglish;
}

}  // namespace

std::string_view category_name(TokenCategory c) {
  switch (c) {
    case TokenCategory::kMandarin:
      return "mandarin";
    case TokenCategory::kPunctuation:
      return "punctuation";
    case TokenCategory::kItn:
      return "itn";
    case TokenCategory::kEnglish:
      return "english";
    case TokenCategory::kOther:
      return "other";
  }
  return "other";
}

TokenCategory classify_char(char32_t cp) {
  if ((cp >= 0x4E00 && cp <= 0x9FFF) || (cp >= 0x3400 && cp <= 0x4DBF)) {
    return TokenCategory::kMandarin;
  }
  if (is_ascii_letter(cp)) return TokenCategory::kEnglish;
  if (is_ascii_digit(cp) || cp == U'$' || cp == U'￥') {
    return TokenCategory::kItn;
  }
  if (is_punctuation(cp)) return TokenCategory::kPunctuation;
  return TokenCategory::kOther;
}

std::vector<Token> tokenize_text(std::string_view text) {
  const std::vector<utf8::CodePoint> cps = utf8::decode(text);
  const std::vector<TokenCategory> cats = resolve_categories(cps);
  std::vector<Token> tokens;
  for (std::size_t i = 0; i < cps.size();) {
    const TokenCategory cat = cats[i];
    if (cat == TokenCategory::kOther) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    if (is_run_category(cat)) {
      while (j < cps.size() && cats[j] == cat) ++j;
    }
    const std::size_t start = cps[i].offset;
    const std::size_t end = cps[j - 1].offset + cps[j - 1].length;
    tokens.push_back(
        Token{std::string(text.substr(start, end - start)), cat, start, end});
    i = j;
  }
  return tokens;
}

Lexicon::Lexicon(const std::vector<std::string>& words) {
  for (const auto& w : words) add(w);
}

void Lexicon::add(std::string word) {
  if (word.empty()) return;
  max_word_len_ = std::max(max_word_len_, utf8::char_count(word));
  entries_.insert(std::move(word));
}

Lexicon Lexicon::load(std::istream& in) {
  Lexicon lex;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string word;
    if (!(fields >> word) || word[0] == '#') continue;
    lex.add(std::move(word));
  }
  return lex;
}

Lexicon Lexicon::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open lexicon " + path.string());
  return load(in);
}

bool Lexicon::contains(std::string_view word) const {
  return entries_.find(word) != entries_.end();
}

std::vector<std::string> segment_words(std::string_view text,
                                       const Lexicon& lexicon) {
  const std::vector<utf8::CodePoint> cps = utf8::decode(text);
  std::vector<std::string> words;
  const std::size_t max_len = std::max<std::size_t>(lexicon.max_word_len(), 1);
  for (std::size_t i = 0; i < cps.size();) {
    std::size_t take = 1;
    for (std::size_t len = std::min(max_len, cps.size() - i); len > 1; --len) {
      const std::size_t begin = cps[i].offset;
      const std::size_t end = cps[i + len - 1].offset + cps[i + len - 1].length;
      if (lexicon.contains(text.substr(begin, end - begin))) {
        take = len;
        break;
      }
    }
    const std::size_t begin = cps[i].offset;
    const std::size_t end = cps[i + take - 1].offset + cps[i + take - 1].length;
    words.emplace_back(text.substr(begin, end - begin));
    i += take;
  }
  return words;
}

}  // namespace ftec
