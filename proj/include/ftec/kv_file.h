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

#ifndef FTEC_KV_FILE_H_
#define FTEC_KV_FILE_H_

#include <istream>
#include <string>
#include <utility>
#include <vector>

namespace ftec {

// UTF-8 "key = value" lines. Blank lines and lines whose first non-blank
// character is '#' are ignored. Surrounding blanks are trimmed from keys and
// values; inside values "\n", "\t" and "\\" are unescaped. Entries keep file
// order. Throws Error(kInvalidConfig) on a line without '=' or an empty key.
std::vector<std::pair<std::string, std::string>> parse_kv(std::istream& in);

}  // namespace ftec

#endif  // FTEC_KV_FILE_H_
