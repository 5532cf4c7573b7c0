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

#include "vlf/common/model_file.hpp"

#include <fstream>

#include "vlf/errors.hpp"
#include "vlf/kernel/checkpoint.hpp"

namespace vlf {

std::filesystem::path sidecar_path(const std::filesystem::path& checkpoint) {
  std::filesystem::path p = checkpoint;
  p += ".json";
  return p;
}

void save_model(const std::filesystem::path& path, const std::string& kind,
                const kernel::ParamSet& params, const nlohmann::json& config) {
  kernel::save_checkpoint(path, params);
  nlohmann::json sidecar = {{"kind", kind}, {"config", config}};
  std::ofstream out(sidecar_path(path));
  if (!out) throw InputError("cannot write " + sidecar_path(path).string());
  out << sidecar.dump(2) << '\n';
}

ModelFile load_model(const std::filesystem::path& path, const std::string& kind) {
  const std::filesystem::path side = sidecar_path(path);
  std::ifstream in(side);
  if (!in) throw SchemaError("missing model config " + side.string());
  nlohmann::json sidecar;
  try {
    in >> sidecar;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError("model config " + side.string() + ": " + e.what());
  }
  if (!sidecar.is_object() || sidecar.value("kind", "") != kind || !sidecar.contains("config")) {
    throw SchemaError("model config " + side.string() + " is not a '" + kind + "' model");
  }
  return {kernel::load_checkpoint(path), sidecar["config"]};
}

}  // namespace vlf
