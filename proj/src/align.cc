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

#include "ftec/align.h"

namespace ftec {

EditCounts edit_counts(const Alignment& alignment) {
  EditCounts c;
  for (const EditOp& op : alignment.ops) {
    switch (op.kind) {
      case EditKind::kMatch:
        ++c.matches;
        break;
      case EditKind::kSubstitute:
        ++c.substitutions;
        break;
      case EditKind::kInsert:
        ++c.insertions;
        break;
      case EditKind::kDelete:
        ++c.deletions;
        break;
    }
  }
  return c;
}

Alignment align(const std::vector<std::string>& ref,
                const std::vector<std::string>& hyp) {
  return align(std::span<const std::string>(ref),
               std::span<const std::string>(hyp));
}

Alignment align(const std::vector<std::string_view>& ref,
                const std::vector<std::string_view>& hyp) {
  return align(std::span<const std::string_view>(ref),
               std::span<const std::string_view>(hyp));
}

}  // namespace ftec
