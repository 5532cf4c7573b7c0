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

#ifndef VLF_TEXT_TOKENIZER_HPP_
#define VLF_TEXT_TOKENIZER_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace vlf::text {

using Tokens = std::vector<std::string>;

// Lowercases ASCII, splits on whitespace and strips leading and trailing
// punctuation from each piece. Pieces that become empty are dropped.
Tokens tokenize(std::string_view text);

// Lowercased, edge-stripped form of a single word; may be empty.
std::string normalize_word(std::string_view word);

// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes);

std::string join(const Tokens& tokens, std::string_view separator = " ");

}  // namespace vlf::text

#endif  // VLF_TEXT_TOKENIZER_HPP_
