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

#ifndef VLF_PIPELINE_CLASSIFIER_HPP_
#define VLF_PIPELINE_CLASSIFIER_HPP_

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vlf/pipeline/records.hpp"

namespace vlf::pipeline {

class TextClassifier {
 public:
  virtual ~TextClassifier() = default;
  virtual std::string predict(const std::string& text) const = 0;
};

struct LabeledDoc {
  std::string text;
  std::string label;
};

// Multinomial logistic regression over length-normalised token counts,
// fitted by full-batch gradient descent from zero weights (deterministic).
class BowClassifier : public TextClassifier {
 public:
  explicit BowClassifier(std::vector<std::string> labels = category_labels());

  // Throws InputError on an empty corpus or an unknown label.
  void train(const std::vector<LabeledDoc>& docs, std::size_t iterations = 300,
             double learning_rate = 2.0);

  std::vector<double> probabilities(const std::string& text) const;
  // Most probable label; ties go to the earlier label.
  std::string predict(const std::string& text) const override;

  const std::vector<std::string>& labels() const { return labels_; }

  nlohmann::json to_json() const;
  static BowClassifier from_json(const nlohmann::json& j);
  void save(const std::filesystem::path& path) const;
  static BowClassifier load(const std::filesystem::path& path);

 private:
  std::vector<std::string> labels_;
  std::map<std::string, std::vector<double>> weights_;  // token -> per-label weight
  std::vector<double> bias_;
};

// Cue text of the video's subtitle file, space-joined.
std::string subtitle_text(const VideoRecord& video);

struct SelectionResult {
  std::vector<VideoRecord> kept;
  // (video id, reason) for videos whose subtitles could not be read.
  std::vector<std::pair<std::string, std::string>> skipped;
};

// Keeps videos the classifier labels Medical Instructional.
SelectionResult select_instructional(const std::vector<VideoRecord>& videos,
                                     const TextClassifier& classifier);

}  // namespace vlf::pipeline

#endif  // VLF_PIPELINE_CLASSIFIER_HPP_
