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

#ifndef VLF_PIPELINE_RECORDS_HPP_
#define VLF_PIPELINE_RECORDS_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vlf/subtitle/time_span.hpp"

namespace vlf::pipeline {

using subtitle::TimeSpan;

// Category labels of the instructional-video classifier.
inline constexpr const char* kMedicalInstructional = "Medical Instructional";
inline constexpr const char* kMedicalNonInstructional = "Medical Non-instructional";
inline constexpr const char* kNonMedical = "Non-Medical";

const std::vector<std::string>& category_labels();

struct VideoRecord {
  std::string video_id;
  std::filesystem::path subtitle_path;
  std::optional<std::filesystem::path> feature_path;
  double duration_s = 0.0;
  std::string category;

  // Paths are written as given.
  nlohmann::json to_json() const;
  static VideoRecord from_json(const nlohmann::json& j);
};

// Reads a JSON list of video records. Relative paths resolve against the
// manifest's directory; every referenced file must exist and every
// duration must be positive. Ids must be unique.
std::vector<VideoRecord> load_manifest(const std::filesystem::path& path);

struct Provenance {
  std::string tagger;               // "crf" or "prompt"
  std::optional<int> template_id;   // prompt tagger only, 1..9

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

inline constexpr std::size_t kMinQuestionWords = 5;
inline constexpr std::size_t kMaxQuestionWords = 19;
inline constexpr double kMinAnswerSeconds = 5.0;

struct VqaTriplet {
  std::string video_id;
  std::string question;
  TimeSpan answer;
  Provenance provenance;

  nlohmann::json to_json() const;
  static VqaTriplet from_json(const nlohmann::json& j);

  friend bool operator==(const VqaTriplet&, const VqaTriplet&) = default;
};

std::size_t word_count(const std::string& text);

// Reason the triplet breaks an invariant, or nullopt when it is valid.
std::optional<std::string> triplet_violation(const VqaTriplet& t, double video_duration_s);

// One compact JSON object per line.
std::string triplets_to_jsonl(const std::vector<VqaTriplet>& triplets);
std::vector<VqaTriplet> triplets_from_jsonl(const std::string& text);
std::vector<VqaTriplet> load_triplets(const std::filesystem::path& path);

// Whole-file helpers shared by the pipeline writers.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace vlf::pipeline

#endif  // VLF_PIPELINE_RECORDS_HPP_
