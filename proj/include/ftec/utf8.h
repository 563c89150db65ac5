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

#ifndef FTEC_UTF8_H_
#define FTEC_UTF8_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace ftec::utf8 {

inline constexpr char32_t kReplacement = 0xFFFD;

// One decoded code point and the bytes it came from. Malformed input
// decodes byte-by-byte to kReplacement so offsets always advance.
struct CodePoint {
  char32_t value;
  std::size_t offset;
  std::size_t length;
};

// Decodes the code point starting at `offset`.
CodePoint decode_at(std::string_view text, std::size_t offset);

std::vector<CodePoint> decode(std::string_view text);

// Splits into one view per code point.
std::vector<std::string_view> split_chars(std::string_view text);

std::size_t char_count(std::string_view text);

std::string encode(char32_t cp);

// Number of (possibly overlapping) occurrences of `needle` in `haystack`.
// Valid UTF-8 needles only match at code point boundaries.
std::size_t count_occurrences(std::string_view haystack,
                              std::string_view needle);

}  // namespace ftec::utf8

#endif  // FTEC_UTF8_H_
