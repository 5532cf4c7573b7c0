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

#include "cli_common.hpp"

#include <iostream>
#include <sstream>

#include "vlf/errors.hpp"
#include "vlf/pipeline/records.hpp"

namespace vlf::cli {

void for_each_jsonl(const std::filesystem::path& path,
                    const std::function<void(const nlohmann::json&)>& fn) {
  std::istringstream in(pipeline::read_text_file(path));
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      fn(nlohmann::json::parse(line));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(line_no, path.filename().string() + ": " + e.what());
    }
  }
}

void write_jsonl(const std::filesystem::path& path, const std::vector<nlohmann::json>& rows) {
  std::string text;
  for (const nlohmann::json& row : rows) text += row.dump() + "\n";
  pipeline::write_text_file(path, text);
}

void print_report(const metrics::EvalReport& report, const Globals& globals) {
  if (globals.json) {
    std::cout << report.to_json().dump(2) << "\n";
  } else {
    std::cout << metrics::render_table(report);
  }
}

}  // namespace vlf::cli
