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

#include "vlf/kernel/checkpoint.hpp"

#include <fstream>
#include <limits>

#include "common/le_io.hpp"
#include "vlf/errors.hpp"

namespace vlf::kernel {

using detail::read_le;
using detail::write_le;

void write_checkpoint(std::ostream& out, const ParamSet& params) {
  out.write("VLFK", 4);
  write_le<std::uint32_t>(out, kCheckpointVersion);
  write_le<std::uint32_t>(out, static_cast<std::uint32_t>(params.size()));
  for (const auto& [name, t] : params.values()) {
    if (name.size() > std::numeric_limits<std::uint16_t>::max()) {
      throw InputError("checkpoint: parameter name too long: " + name);
    }
    write_le<std::uint16_t>(out, static_cast<std::uint16_t>(name.size()));
    out.write(name.data(), static_cast<std::streamsize>(name.size()));
    write_le<std::uint8_t>(out, static_cast<std::uint8_t>(t.rank()));
    for (std::size_t d : t.shape()) write_le<std::uint32_t>(out, static_cast<std::uint32_t>(d));
    for (double v : t.data()) detail::write_f64(out, v);
  }
  if (!out) throw InputError("checkpoint: write failed");
}

ParamSet read_checkpoint(std::istream& in) {
  detail::expect_magic(in, "VLFK", "checkpoint");
  const auto version = read_le<std::uint32_t>(in, "checkpoint version");
  if (version != kCheckpointVersion) {
    throw InputError("checkpoint: unsupported version " + std::to_string(version));
  }
  const auto count = read_le<std::uint32_t>(in, "parameter count");
  ParamSet params;
  for (std::uint32_t p = 0; p < count; ++p) {
    const auto len = read_le<std::uint16_t>(in, "name length");
    std::string name(len, '\0');
    if (!in.read(name.data(), len)) throw InputError("checkpoint: truncated name");
    const auto rank = read_le<std::uint8_t>(in, "rank");
    if (rank == 0) throw InputError("checkpoint: parameter '" + name + "' has rank 0");
    std::vector<std::size_t> shape(rank);
    std::size_t n = 1;
    for (auto& d : shape) {
      d = read_le<std::uint32_t>(in, "dimension");
      n *= d;
    }
    std::vector<double> data(n);
    for (double& v : data) v = detail::read_f64(in, "parameter values");
    params.add(name, Tensor(std::move(shape), std::move(data)));
  }
  return params;
}

void save_checkpoint(const std::filesystem::path& path, const ParamSet& params) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot open " + path.string() + " for writing");
  write_checkpoint(out, params);
}

ParamSet load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open checkpoint " + path.string());
  return read_checkpoint(in);
}

}  // namespace vlf::kernel
