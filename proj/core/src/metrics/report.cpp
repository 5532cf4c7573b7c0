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

#include "vlf/metrics/report.hpp"

#include <algorithm>
#include <cstdio>

#include "vlf/errors.hpp"

namespace vlf::metrics {

double EvalReport::at(const std::string& key) const {
  auto it = values.find(key);
  if (it == values.end()) throw IndexError("report '" + name + "' has no value '" + key + "'");
  return it->second;
}

nlohmann::json EvalReport::to_json() const {
  return {{"name", name}, {"values", values}, {"items", items}, {"config", config}};
}

EvalReport EvalReport::from_json(const nlohmann::json& j) {
  EvalReport r;
  try {
    r.name = j.at("name").get<std::string>();
    r.values = j.at("values").get<std::map<std::string, double>>();
    r.items = j.value("items", nlohmann::json::array());
    r.config = j.value("config", nlohmann::json::object());
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("eval report: ") + e.what());
  }
  return r;
}

std::string render_table(const EvalReport& report, int precision) {
  std::size_t key_width = 6;
  for (const auto& [k, v] : report.values) key_width = std::max(key_width, k.size());
  std::string out = report.name + "\n";
  char buf[64];
  for (const auto& [k, v] : report.values) {
    std::snprintf(buf, sizeof buf, "%12.*f", precision, v);
    out += k + std::string(key_width - k.size() + 2, ' ') + buf + "\n";
  }
  return out;
}

}  // namespace vlf::metrics
