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

#ifndef FTEC_MODEL_CLIENT_H_
#define FTEC_MODEL_CLIENT_H_

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>

#include "ftec/promptgen.h"

namespace ftec {

// Where and how to reach a correction model. The request body is
// {"<prompt_field>": prompt}; the reply must be a JSON object whose
// <text_field> member is a string.
struct ModelEndpoint {
  std::string url;  // http://host[:port]/path
  std::chrono::milliseconds timeout{60000};
  int max_retries = 3;
  std::chrono::milliseconds initial_backoff{200};
  std::string prompt_field = "prompt";
  std::string text_field = "text";
};

class ModelClient {
 public:
  virtual ~ModelClient() = default;
  // Throws Error(kEndpoint) once the request has definitively failed.
  virtual std::string complete(const std::string& prompt) = 0;
};

// HTTP POST transport. Connection failures, 429 and 5xx replies are retried
// up to max_retries times with exponential backoff; other failures are not.
// Safe to call from several threads.
class HttpModelClient : public ModelClient {
 public:
  // Throws Error(kInvalidArgument) for a bad URL, a non-positive timeout or
  // negative retries. Only plain http is supported.
  explicit HttpModelClient(ModelEndpoint endpoint);

  std::string complete(const std::string& prompt) override;

  // Requests issued so far, including retries.
  int attempts() const { return attempts_.load(); }

 private:
  ModelEndpoint endpoint_;
  std::string host_;  // scheme://host:port
  std::string path_;
  std::atomic<int> attempts_{0};
};

// In-process model, for tests and scripted evaluation.
class CallbackModelClient : public ModelClient {
 public:
  using Callback = std::function<std::string(const std::string&)>;
  explicit CallbackModelClient(Callback fn) : fn_(std::move(fn)) {}
  std::string complete(const std::string& prompt) override {
    return fn_(prompt);
  }

 private:
  Callback fn_;
};

struct OutputKey {
  std::string doc_id;
  std::optional<std::size_t> segment_index;
  PromptType type;

  auto operator<=>(const OutputKey&) const = default;
};

// Model outputs keyed by (doc_id, segment_index, prompt_type), backed by a
// JSONL file of {"doc_id", "segment_index", "prompt_type", "text"} lines
// (segment_index is null for article prompts). Thread-safe; put() appends
// to the file immediately so an interrupted run can resume.
class OutputCache {
 public:
  OutputCache() = default;
  // Loads existing lines (later lines win) and opens the file for appending.
  // A missing file is created. Throws Error(kIo) / Error(kMalformedJson).
  explicit OutputCache(const std::filesystem::path& path,
                       bool writable = true);

  std::optional<std::string> find(const OutputKey& key) const;
  void put(const OutputKey& key, const std::string& text);
  std::size_t size() const;

  static std::string to_jsonl(const OutputKey& key, const std::string& text);

 private:
  mutable std::mutex mu_;
  std::map<OutputKey, std::string> entries_;
  std::ofstream out_;
};

}  // namespace ftec

#endif  // FTEC_MODEL_CLIENT_H_
