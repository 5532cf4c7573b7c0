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

#include "vlf/pipeline/records.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "vlf/errors.hpp"

namespace vlf::pipeline {

namespace fs = std::filesystem;

const std::vector<std::string>& category_labels() {
  static const std::vector<std::string> labels = {kMedicalInstructional,
                                                  kMedicalNonInstructional, kNonMedical};
  return labels;
}

nlohmann::json VideoRecord::to_json() const {
  nlohmann::json j = {{"video_id", video_id},
                      {"subtitle_path", subtitle_path.generic_string()},
                      {"duration_s", duration_s},
                      {"category", category}};
  if (feature_path) j["feature_path"] = feature_path->generic_string();
  return j;
}

VideoRecord VideoRecord::from_json(const nlohmann::json& j) {
  VideoRecord v;
  try {
    v.video_id = j.at("video_id").get<std::string>();
    v.subtitle_path = j.at("subtitle_path").get<std::string>();
    if (j.contains("feature_path") && !j.at("feature_path").is_null()) {
      v.feature_path = fs::path(j.at("feature_path").get<std::string>());
    }
    v.duration_s = j.at("duration_s").get<double>();
    v.category = j.value("category", std::string());
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("video record: ") + e.what());
  }
  if (v.video_id.empty()) throw SchemaError("video record has an empty id");
  return v;
}

std::vector<VideoRecord> load_manifest(const fs::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("manifest " + path.string() + ": " + e.what());
  }
  if (!j.is_array()) throw SchemaError("manifest " + path.string() + " must be a JSON list");
  const fs::path base = path.parent_path();
  std::vector<VideoRecord> out;
  std::set<std::string> ids;
  for (const auto& item : j) {
    VideoRecord v = VideoRecord::from_json(item);
    if (!ids.insert(v.video_id).second) throw SchemaError("duplicate video id " + v.video_id);
    if (!(v.duration_s > 0.0) || !std::isfinite(v.duration_s)) {
      throw SchemaError("video " + v.video_id + " needs a positive duration");
    }
    if (v.subtitle_path.is_relative()) v.subtitle_path = base / v.subtitle_path;
    if (v.feature_path && v.feature_path->is_relative()) v.feature_path = base / *v.feature_path;
    if (!fs::exists(v.subtitle_path)) {
      throw InputError("video " + v.video_id + ": missing subtitle file " +
                       v.subtitle_path.string());
    }
    if (v.feature_path && !fs::exists(*v.feature_path)) {
      throw InputError("video " + v.video_id + ": missing feature track " +
                       v.feature_path->string());
    }
    out.push_back(std::move(v));
  }
  return out;
}

nlohmann::json VqaTriplet::to_json() const {
  nlohmann::json prov = {{"tagger", provenance.tagger}};
  if (provenance.template_id) prov["template_id"] = *provenance.template_id;
  return {{"video_id", video_id},
          {"question", question},
          {"answer_start_s", answer.start_s},
          {"answer_end_s", answer.end_s},
          {"provenance", prov}};
}

VqaTriplet VqaTriplet::from_json(const nlohmann::json& j) {
  VqaTriplet t;
  try {
    t.video_id = j.at("video_id").get<std::string>();
    t.question = j.at("question").get<std::string>();
    t.answer = {j.at("answer_start_s").get<double>(), j.at("answer_end_s").get<double>()};
    const auto& prov = j.at("provenance");
    t.provenance.tagger = prov.at("tagger").get<std::string>();
    if (prov.contains("template_id")) t.provenance.template_id = prov.at("template_id").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("triplet: ") + e.what());
  }
  return t;
}

std::size_t word_count(const std::string& text) {
  std::istringstream in(text);
  std::size_t n = 0;
  for (std::string w; in >> w;) ++n;
  return n;
}

std::optional<std::string> triplet_violation(const VqaTriplet& t, double video_duration_s) {
  const std::size_t q = word_count(t.question);
  if (q < kMinQuestionWords || q > kMaxQuestionWords) {
    return "question has " + std::to_string(q) + " words";
  }
  if (!t.answer.valid()) return "answer span is invalid";
  if (t.answer.duration() < kMinAnswerSeconds) return "answer is shorter than 5 s";
  if (t.answer.start_s < 0.0 || t.answer.end_s > video_duration_s) {
    return "answer lies outside the video";
  }
  if (t.provenance.tagger != "crf" && t.provenance.tagger != "prompt") {
    return "unknown tagger '" + t.provenance.tagger + "'";
  }
  if (t.provenance.template_id &&
      (t.provenance.tagger != "prompt" || *t.provenance.template_id < 1 ||
       *t.provenance.template_id > 9)) {
    return "template id is only valid for the prompt tagger, in 1..9";
  }
  return std::nullopt;
}

std::string triplets_to_jsonl(const std::vector<VqaTriplet>& triplets) {
  std::string out;
  for (const VqaTriplet& t : triplets) out += t.to_json().dump() + "\n";
  return out;
}

std::vector<VqaTriplet> triplets_from_jsonl(const std::string& text) {
  std::vector<VqaTriplet> out;
  std::istringstream in(text);
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(VqaTriplet::from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return out;
}

std::vector<VqaTriplet> load_triplets(const fs::path& path) {
  return triplets_from_jsonl(read_text_file(path));
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw InputError("cannot write " + path.string());
}

}  // namespace vlf::pipeline
