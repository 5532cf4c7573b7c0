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

#ifndef VLF_TOOLS_CLI_COMMON_HPP_
#define VLF_TOOLS_CLI_COMMON_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "vlf/metrics/report.hpp"

namespace vlf::cli {

// Options shared by every subcommand. Subcommands fall through to the root
// so `--seed` and `--state-dir` may follow the subcommand name.
struct Globals {
  std::uint64_t seed = 0;
  std::filesystem::path state_dir = "vlf_data";
  bool json = false;
};

void register_data_commands(CLI::App& app, Globals& globals);
void register_model_commands(CLI::App& app, Globals& globals);
void register_eval_commands(CLI::App& app, Globals& globals);

// Calls fn once per non-blank line of a JSON-lines file.
void for_each_jsonl(const std::filesystem::path& path,
                    const std::function<void(const nlohmann::json&)>& fn);

void write_jsonl(const std::filesystem::path& path, const std::vector<nlohmann::json>& rows);

// Prints the report as a table, or as JSON when --json is set.
void print_report(const metrics::EvalReport& report, const Globals& globals);

}  // namespace vlf::cli

#endif  // VLF_TOOLS_CLI_COMMON_HPP_
