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

#ifndef VLF_KERNEL_CHECKPOINT_HPP_
#define VLF_KERNEL_CHECKPOINT_HPP_

#include <filesystem>
#include <iosfwd>

#include "vlf/kernel/param_set.hpp"

namespace vlf::kernel {

// Binary parameter file, all integers little-endian:
//   "VLFK" | u32 version | u32 count |
//   per parameter: u16 name length, UTF-8 name, u8 rank, u32 dims..., f64 values...
inline constexpr std::uint32_t kCheckpointVersion = 1;

void write_checkpoint(std::ostream& out, const ParamSet& params);
ParamSet read_checkpoint(std::istream& in);

void save_checkpoint(const std::filesystem::path& path, const ParamSet& params);
ParamSet load_checkpoint(const std::filesystem::path& path);

}  // namespace vlf::kernel

#endif  // VLF_KERNEL_CHECKPOINT_HPP_
