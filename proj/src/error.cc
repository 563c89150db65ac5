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

#include "ftec/error.h"

namespace ftec {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedJson:
      return "MALFORMED_JSON";
    case ErrorCode::kScopeMismatch:
      return "SCOPE_MISMATCH";
    case ErrorCode::kSegmentCountMismatch:
      return "SEGMENT_COUNT_MISMATCH";
    case ErrorCode::kTemplateMissingPlaceholder:
      return "TEMPLATE_MISSING_PLACEHOLDER";
    case ErrorCode::kEmptyReference:
      return "EMPTY_REFERENCE";
    case ErrorCode::kZeroBaseline:
      return "ZERO_BASELINE";
    case ErrorCode::kInvalidArgument:
      return "INVALID_ARGUMENT";
    case ErrorCode::kInvalidManifest:
      return "INVALID_MANIFEST";
    case ErrorCode::kInvalidConfig:
      return "INVALID_CONFIG";
    case ErrorCode::kIo:
      return "IO_ERROR";
    case ErrorCode::kEndpoint:
      return "ENDPOINT_ERROR";
  }
  return "UNKNOWN";
}

}  // namespace ftec
