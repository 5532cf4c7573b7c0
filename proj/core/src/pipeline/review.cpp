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

#include "vlf/pipeline/review.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>
#include <thread>

#include <httplib.h>

#include "vlf/errors.hpp"

namespace vlf::pipeline {

namespace fs = std::filesystem;
using metrics::Criterion;
using metrics::Judgment;

namespace {

HttpResponse json_response(int status, const nlohmann::json& body) {
  return {status, body.dump()};
}

HttpResponse error_response(int status, const std::string& message,
                            nlohmann::json extra = nlohmann::json::object()) {
  extra["error"] = message;
  return json_response(status, extra);
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

nlohmann::json criteria_json() {
  nlohmann::json out = nlohmann::json::object();
  for (Criterion c : metrics::kAllCriteria) {
    out[metrics::criterion_name(c)] = metrics::criterion_labels(c);
  }
  return out;
}

}  // namespace

void save_review_set(const fs::path& path, const std::vector<ReviewSample>& samples) {
  nlohmann::json j = nlohmann::json::array();
  for (const ReviewSample& s : samples) j.push_back(s.to_json());
  write_text_file(path, j.dump(2) + "\n");
}

std::vector<ReviewSample> load_review_set(const fs::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("review set " + path.string() + ": " + e.what());
  }
  if (!j.is_array()) throw SchemaError("review set must be a JSON list");
  std::vector<ReviewSample> out;
  for (const auto& item : j) out.push_back(ReviewSample::from_json(item));
  return out;
}

std::vector<Judgment> load_judgments(const fs::path& path) {
  std::vector<Judgment> out;
  if (!fs::exists(path)) return out;
  std::istringstream in(read_text_file(path));
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(Judgment::from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return out;
}

JudgmentStore::JudgmentStore(fs::path path) : path_(std::move(path)) {
  judgments_ = load_judgments(path_);
}

JudgmentStore::AppendResult JudgmentStore::append(const Judgment& judgment) {
  std::lock_guard<std::mutex> lock(mu_);
  for (const Judgment& j : judgments_) {
    if (j.annotator_id == judgment.annotator_id && j.sample_id == judgment.sample_id &&
        j.criterion == judgment.criterion) {
      return AppendResult::kDuplicate;
    }
  }
  if (path_.has_parent_path()) fs::create_directories(path_.parent_path());
  std::ofstream out(path_, std::ios::binary | std::ios::app);
  out << judgment.to_json().dump() << "\n";
  out.flush();
  if (!out) throw InputError("cannot append to " + path_.string());
  judgments_.push_back(judgment);
  return AppendResult::kAppended;
}

std::vector<Judgment> JudgmentStore::judgments() const {
  std::lock_guard<std::mutex> lock(mu_);
  return judgments_;
}

bool JudgmentStore::judged(const std::string& annotator, const std::string& sample,
                           Criterion criterion) const {
  std::lock_guard<std::mutex> lock(mu_);
  for (const Judgment& j : judgments_) {
    if (j.annotator_id == annotator && j.sample_id == sample && j.criterion == criterion) {
      return true;
    }
  }
  return false;
}

std::size_t JudgmentStore::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return judgments_.size();
}

struct ReviewService::Server {
  httplib::Server http;
  std::atomic<int> port{0};
};

ReviewService::ReviewService(const fs::path& state_dir, std::optional<fs::path> ui_dir)
    : samples_(load_review_set(state_dir / kReviewSetFile)),
      store_(state_dir / kJudgmentFile),
      ui_dir_(std::move(ui_dir)),
      server_(std::make_unique<Server>()) {}

ReviewService::~ReviewService() = default;

HttpResponse ReviewService::health() const {
  return json_response(
      200, {{"status", "ok"}, {"samples", samples_.size()}, {"judgments", store_.size()}});
}

HttpResponse ReviewService::next_sample(const std::string& annotator) const {
  if (annotator.empty()) return error_response(400, "missing annotator query parameter");
  std::size_t done = 0;
  const ReviewSample* next = nullptr;
  for (const ReviewSample& s : samples_) {
    bool complete = true;
    for (Criterion c : metrics::kAllCriteria) complete = complete && store_.judged(annotator, s.sample_id, c);
    if (complete) {
      ++done;
    } else if (!next) {
      next = &s;
    }
  }
  if (!next) return {204, ""};
  nlohmann::json pending = nlohmann::json::array();
  for (Criterion c : metrics::kAllCriteria) {
    if (!store_.judged(annotator, next->sample_id, c)) pending.push_back(metrics::criterion_name(c));
  }
  return json_response(200, {{"sample_id", next->sample_id},
                             {"video_id", next->triplet.video_id},
                             {"question", next->triplet.question},
                             {"answer", {{"start_s", next->triplet.answer.start_s},
                                         {"end_s", next->triplet.answer.end_s}}},
                             {"excerpt", next->excerpt},
                             {"video_url", next->video_url},
                             {"criteria", criteria_json()},
                             {"pending", pending},
                             {"progress", {{"judged", done}, {"total", samples_.size()}}}});
}

HttpResponse ReviewService::post_judgment(const std::string& body) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(body);
  } catch (const nlohmann::json::parse_error&) {
    return error_response(400, "body is not valid JSON");
  }
  for (const char* field : {"sample_id", "annotator_id", "criterion", "label"}) {
    if (!j.is_object() || !j.contains(field) || !j.at(field).is_string() ||
        j.at(field).get<std::string>().empty()) {
      return error_response(400, std::string("missing string field '") + field + "'");
    }
  }
  Judgment judgment;
  judgment.sample_id = j.at("sample_id").get<std::string>();
  judgment.annotator_id = j.at("annotator_id").get<std::string>();
  judgment.label = j.at("label").get<std::string>();
  try {
    judgment.criterion = metrics::parse_criterion(j.at("criterion").get<std::string>());
  } catch (const SchemaError& e) {
    nlohmann::json names = nlohmann::json::array();
    for (Criterion c : metrics::kAllCriteria) names.push_back(metrics::criterion_name(c));
    return error_response(422, e.what(), {{"allowed_criteria", names}});
  }
  if (!metrics::label_allowed(judgment.criterion, judgment.label)) {
    return error_response(422,
                          "label '" + judgment.label + "' is not allowed for " +
                              metrics::criterion_name(judgment.criterion),
                          {{"criterion", metrics::criterion_name(judgment.criterion)},
                           {"allowed", metrics::criterion_labels(judgment.criterion)}});
  }
  const bool known = std::any_of(samples_.begin(), samples_.end(), [&](const ReviewSample& s) {
    return s.sample_id == judgment.sample_id;
  });
  if (!known) return error_response(404, "unknown sample '" + judgment.sample_id + "'");
  judgment.timestamp = j.value("timestamp", std::string());
  if (judgment.timestamp.empty()) judgment.timestamp = utc_now();
  if (store_.append(judgment) == JudgmentStore::AppendResult::kDuplicate) {
    return error_response(409, "judgment already recorded for this annotator, sample and criterion");
  }
  return json_response(201, judgment.to_json());
}

HttpResponse ReviewService::summary() const {
  return json_response(200, metrics::agreement_table(store_.judgments(), samples_.size()).to_json());
}

void ReviewService::serve(const std::string& host, int port) {
  httplib::Server& http = server_->http;
  auto reply = [](httplib::Response& res, const HttpResponse& r) {
    res.status = r.status;
    if (!r.body.empty()) res.set_content(r.body, "application/json");
  };
  http.Get("/api/health",
           [this, reply](const httplib::Request&, httplib::Response& res) { reply(res, health()); });
  http.Get("/api/samples/next", [this, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, next_sample(req.get_param_value("annotator")));
  });
  http.Post("/api/judgments", [this, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, post_judgment(req.body));
  });
  http.Get("/api/summary",
           [this, reply](const httplib::Request&, httplib::Response& res) { reply(res, summary()); });
  if (ui_dir_ && fs::is_directory(*ui_dir_)) {
    http.set_mount_point("/", ui_dir_->string());
  } else {
    http.Get("/", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(
          "<!doctype html><title>review</title><p>The review UI bundle is not installed. "
          "The JSON API is available under /api/.</p>",
          "text/html");
    });
  }
  int bound = port == 0 ? http.bind_to_any_port(host) : (http.bind_to_port(host, port) ? port : -1);
  if (bound < 0) throw InputError("cannot bind " + host + ":" + std::to_string(port));
  server_->port = bound;
  http.listen_after_bind();
}

void ReviewService::stop() { server_->http.stop(); }

int ReviewService::bound_port() const { return server_->port; }

bool ReviewService::wait_until_ready(int timeout_ms) const {
  const auto deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(timeout_ms);
  while (std::chrono::steady_clock::now() < deadline) {
    if (server_->port > 0 && server_->http.is_running()) return true;
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
  }
  return false;
}

}  // namespace vlf::pipeline
