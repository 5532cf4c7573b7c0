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

#ifndef VLF_METRICS_AGREEMENT_HPP_
#define VLF_METRICS_AGREEMENT_HPP_

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vlf/metrics/report.hpp"

namespace vlf::metrics {

enum class Criterion { kInstructional, kSegmentAnswer, kQuestionQuality, kAlignment };

inline constexpr std::array<Criterion, 4> kAllCriteria = {
    Criterion::kInstructional, Criterion::kSegmentAnswer, Criterion::kQuestionQuality,
    Criterion::kAlignment};

std::string criterion_name(Criterion c);
// Throws SchemaError on an unknown name.
Criterion parse_criterion(const std::string& name);
const std::vector<std::string>& criterion_labels(Criterion c);
bool label_allowed(Criterion c, const std::string& label);

struct Judgment {
  std::string sample_id;
  std::string annotator_id;
  Criterion criterion = Criterion::kInstructional;
  std::string label;
  std::string timestamp;

  nlohmann::json to_json() const;
  // Throws SchemaError on missing fields or a label outside its criterion.
  static Judgment from_json(const nlohmann::json& j);

  friend bool operator==(const Judgment&, const Judgment&) = default;
};

// Per criterion three label distributions in percent:
//   <criterion>.raw.<label>        share of all judgments
//   <criterion>.unanimous.<label>  share of samples where every annotator agrees
//   <criterion>.majority.<label>   share of samples with a strict majority label
// plus <criterion>.unanimous_samples, <criterion>.majority_samples and the
// judged sample count. `samples` echoes sample_count when given, otherwise
// the number of distinct judged samples.
EvalReport agreement_table(const std::vector<Judgment>& judgments,
                           std::optional<std::size_t> sample_count = std::nullopt);

// Criterion blocks with one label row each, the layout of a human
// evaluation table. `summary` selects raw, unanimous or majority.
std::string render_agreement(const EvalReport& report, const std::string& summary = "unanimous");

}  // namespace vlf::metrics

#endif  // VLF_METRICS_AGREEMENT_HPP_
