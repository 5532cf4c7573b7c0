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

#ifndef VLF_METRICS_REPORT_HPP_
#define VLF_METRICS_REPORT_HPP_

#include <map>
#include <string>

#include <nlohmann/json.hpp>

namespace vlf::metrics {

// Named scalar results plus a per-item breakdown and the configuration that
// produced them. Keys are ordered so serialisation is deterministic.
struct EvalReport {
  std::string name;
  std::map<std::string, double> values;
  nlohmann::json items = nlohmann::json::array();
  nlohmann::json config = nlohmann::json::object();

  double at(const std::string& key) const;
  nlohmann::json to_json() const;
  static EvalReport from_json(const nlohmann::json& j);

  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

// Two-column "key  value" listing with values right-aligned.
std::string render_table(const EvalReport& report, int precision = 4);

}  // namespace vlf::metrics

#endif  // VLF_METRICS_REPORT_HPP_
