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

#ifndef VLF_COMMON_MODEL_FILE_HPP_
#define VLF_COMMON_MODEL_FILE_HPP_

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "vlf/kernel/param_set.hpp"

namespace vlf {

// A trained model on disk: a checkpoint at `path` plus its configuration in
// the sidecar `path` + ".json". The sidecar carries a "kind" string that is
// checked on load.
struct ModelFile {
  kernel::ParamSet params;
  nlohmann::json config;
};

std::filesystem::path sidecar_path(const std::filesystem::path& checkpoint);

void save_model(const std::filesystem::path& path, const std::string& kind,
                const kernel::ParamSet& params, const nlohmann::json& config);

// Throws SchemaError when the sidecar is missing, malformed or of a
// different kind.
ModelFile load_model(const std::filesystem::path& path, const std::string& kind);

}  // namespace vlf

#endif  // VLF_COMMON_MODEL_FILE_HPP_
