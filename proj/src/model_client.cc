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

#include "ftec/model_client.h"

#include <thread>

#include <httplib.h>
#include <spdlog/spdlog.h>

#include <json.hpp>

#include "ftec/error.h"

namespace ftec {

namespace {

bool is_retryable_status(int status) { return status == 429 || status >= 500; }

}  // namespace

HttpModelClient::HttpModelClient(ModelEndpoint endpoint)
    : endpoint_(std::move(endpoint)) {
  static constexpr std::string_view kScheme = "http://";
  const std::string& url = endpoint_.url;
  if (url.rfind(kScheme, 0) != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "endpoint must be an http:// URL: '" + url + "'");
  }
  const std::size_t slash = url.find('/', kScheme.size());
  host_ = url.substr(0, slash);
  path_ = slash == std::string::npos ? "/" : url.substr(slash);
  if (host_.size() == kScheme.size()) {
    throw Error(ErrorCode::kInvalidArgument, "endpoint has no host: " + url);
  }
  if (endpoint_.timeout.count() <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "endpoint timeout must be > 0");
  }
  if (endpoint_.max_retries < 0) {
    throw Error(ErrorCode::kInvalidArgument, "max retries must be >= 0");
  }
}

std::string HttpModelClient::complete(const std::string& prompt) {
  nlohmann::json body;
  body[endpoint_.prompt_field] = prompt;
  const std::string payload =
      body.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);

  httplib::Client client(host_);
  client.set_connection_timeout(endpoint_.timeout);
  client.set_read_timeout(endpoint_.timeout);
  client.set_write_timeout(endpoint_.timeout);

  auto backoff = endpoint_.initial_backoff;
  std::string last_error;
  for (int attempt = 0; attempt <= endpoint_.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
    ++attempts_;
    auto res = client.Post(path_, payload, "application/json");
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
      spdlog::debug("{} attempt {} failed: {}", endpoint_.url, attempt + 1,
                    last_error);
      continue;
    }
    if (res->status != 200) {
      last_error = "HTTP status " + std::to_string(res->status);
      if (is_retryable_status(res->status)) continue;
      break;
    }
    try {
      const auto reply = nlohmann::json::parse(res->body);
      return reply.at(endpoint_.text_field).get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kEndpoint,
                  "unexpected reply from " + endpoint_.url + ": " + e.what());
    }
  }
  throw Error(ErrorCode::kEndpoint, endpoint_.url + ": " + last_error);
}

OutputCache::OutputCache(const std::filesystem::path& path, bool writable) {
  {
    std::ifstream in(path);
    std::string line;
    for (int lineno = 1; in && std::getline(in, line); ++lineno) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      try {
        const auto j = nlohmann::json::parse(line);
        OutputKey key;
        key.doc_id = j.at("doc_id").get<std::string>();
        if (!j.at("segment_index").is_null()) {
          key.segment_index = j.at("segment_index").get<std::size_t>();
        }
        key.type = parse_prompt_type(j.at("prompt_type").get<std::string>());
        entries_[key] = j.at("text").get<std::string>();
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::kMalformedJson,
                    path.string() + ":" + std::to_string(lineno) + ": " +
                        e.what());
      }
    }
  }
  if (writable) {
    out_.open(path, std::ios::app);
    if (!out_) {
      throw Error(ErrorCode::kIo, "cannot append to " + path.string());
    }
  }
}

std::optional<std::string> OutputCache::find(const OutputKey& key) const {
  std::lock_guard lock(mu_);
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void OutputCache::put(const OutputKey& key, const std::string& text) {
  std::lock_guard lock(mu_);
  entries_[key] = text;
  if (out_.is_open()) {
    out_ << to_jsonl(key, text) << '\n';
    out_.flush();
  }
}

std::size_t OutputCache::size() const {
  std::lock_guard lock(mu_);
  return entries_.size();
}

std::string OutputCache::to_jsonl(const OutputKey& key,
                                  const std::string& text) {
  nlohmann::ordered_json j;
  j["doc_id"] = key.doc_id;
  j["segment_index"] = key.segment_index
                           ? nlohmann::ordered_json(*key.segment_index)
                           : nlohmann::ordered_json();
  j["prompt_type"] = prompt_type_name(key.type);
  j["text"] = text;
  return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

}  // namespace ftec
