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

#ifndef VLF_TEXT_VOCAB_HPP_
#define VLF_TEXT_VOCAB_HPP_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "vlf/text/tokenizer.hpp"

namespace vlf::text {

inline constexpr std::string_view kPad = "<pad>";
inline constexpr std::string_view kBos = "<s>";
inline constexpr std::string_view kEos = "</s>";
inline constexpr std::string_view kUnk = "<unk>";
inline constexpr std::string_view kMask = "<mask>";
inline constexpr std::string_view kSep = "<sep>";

// Dense token ids. The six specials always occupy ids 0..5 in the order
// pad, bos, eos, unk, mask, sep.
class Vocab {
 public:
  static constexpr std::size_t kPadId = 0;
  static constexpr std::size_t kBosId = 1;
  static constexpr std::size_t kEosId = 2;
  static constexpr std::size_t kUnkId = 3;
  static constexpr std::size_t kMaskId = 4;
  static constexpr std::size_t kSepId = 5;
  static constexpr std::size_t kSpecialCount = 6;

  Vocab();

  // Specials followed by every token seen at least `min_count` times, in
  // order of first appearance.
  static Vocab build(const std::vector<Tokens>& corpus, std::size_t min_count = 1);

  // Throws SchemaError unless the list starts with the specials in order and
  // holds no duplicates.
  static Vocab from_tokens(std::vector<std::string> tokens);

  std::size_t add(const std::string& token);
  std::size_t id(std::string_view token) const;  // unknown -> kUnkId
  bool contains(std::string_view token) const;
  const std::string& token(std::size_t id) const;
  std::size_t size() const { return tokens_.size(); }
  const std::vector<std::string>& tokens() const { return tokens_; }

  std::vector<std::size_t> encode(const Tokens& tokens) const;
  // Drops specials.
  Tokens decode(const std::vector<std::size_t>& ids) const;

  // JSON array of tokens; index is id.
  void save(const std::filesystem::path& path) const;
  static Vocab load(const std::filesystem::path& path);

  friend bool operator==(const Vocab& a, const Vocab& b) { return a.tokens_ == b.tokens_; }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, std::size_t> ids_;
};

}  // namespace vlf::text

#endif  // VLF_TEXT_VOCAB_HPP_
