/* Copyright 2026 The VLF Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef VLF_PIPELINE_REVIEW_HPP_
#define VLF_PIPELINE_REVIEW_HPP_

#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "vlf/metrics/agreement.hpp"
#include "vlf/pipeline/dataset.hpp"

namespace vlf::pipeline {

inline constexpr const char* kReviewSetFile = "review_set.json";
inline constexpr const char* kJudgmentFile = "judgments.jsonl";

void save_review_set(const std::filesystem::path& path, const std::vector<ReviewSample>& samples);
std::vector<ReviewSample> load_review_set(const std::filesystem::path& path);

// Append-only JSON-lines judgment log. One record per (annotator, sample,
// criterion); the duplicate check and the append happen under one lock.
class JudgmentStore {
 public:
  enum class AppendResult { kAppended, kDuplicate };

  // Replays an existing log; a missing file is an empty store.
  explicit JudgmentStore(std::filesystem::path path);

  AppendResult append(const metrics::Judgment& judgment);
  std::vector<metrics::Judgment> judgments() const;
  bool judged(const std::string& annotator, const std::string& sample,
              metrics::Criterion criterion) const;
  std::size_t size() const;

 private:
  std::filesystem::path path_;
  mutable std::mutex mu_;
  std::vector<metrics::Judgment> judgments_;
};

// Replays a judgment log file without opening it for writing.
std::vector<metrics::Judgment> load_judgments(const std::filesystem::path& path);

struct HttpResponse {
  int status = 200;
  std::string body;  // JSON, or empty for 204
};

// Review workflow over a state directory holding review_set.json and
// judgments.jsonl. Handlers are plain functions so they can be exercised
// without a socket; serve() wires them to HTTP.
class ReviewService {
 public:
  explicit ReviewService(const std::filesystem::path& state_dir,
                         std::optional<std::filesystem::path> ui_dir = std::nullopt);
  ~ReviewService();

  HttpResponse health() const;
  HttpResponse next_sample(const std::string& annotator) const;
  HttpResponse post_judgment(const std::string& body);
  HttpResponse summary() const;

  // Blocks until stop(). Port 0 picks a free port; bound_port() reports it
  // once listening.
  void serve(const std::string& host, int port);
  void stop();
  int bound_port() const;
  bool wait_until_ready(int timeout_ms) const;

  const std::vector<ReviewSample>& samples() const { return samples_; }
  const JudgmentStore& store() const { return store_; }

 private:
  struct Server;

  std::vector<ReviewSample> samples_;
  JudgmentStore store_;
  std::optional<std::filesystem::path> ui_dir_;
  std::unique_ptr<Server> server_;
};

}  // namespace vlf::pipeline

#endif  // VLF_PIPELINE_REVIEW_HPP_
