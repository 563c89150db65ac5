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

#ifndef FTEC_ERROR_H_
#define FTEC_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace ftec {

enum class ErrorCode {
  kMalformedJson,
  kScopeMismatch,
  kSegmentCountMismatch,
  kTemplateMissingPlaceholder,
  kEmptyReference,
  kZeroBaseline,
  kInvalidArgument,
  kInvalidManifest,
  kInvalidConfig,
  kIo,
  kEndpoint,
};

std::string_view error_code_name(ErrorCode code);

// All recoverable failures in the library are reported as ftec::Error.
// Per-item problems inside batch operations (unresolvable pairs, pairs that
// fail to apply) are collected into reports instead of being thrown.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " +
                           message),
        code_(code),
        message_(message) {}

  ErrorCode code() const { return code_; }
  // what() without the code prefix.
  const std::string& message() const { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

}  // namespace ftec

#endif  // FTEC_ERROR_H_
