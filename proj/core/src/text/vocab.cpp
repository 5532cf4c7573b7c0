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

#include "vlf/text/vocab.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "vlf/errors.hpp"

namespace vlf::text {

namespace {
const std::string_view kSpecials[] = {kPad, kBos, kEos, kUnk, kMask, kSep};
}  // namespace

Vocab::Vocab() {
  for (std::string_view s : kSpecials) add(std::string(s));
}

Vocab Vocab::build(const std::vector<Tokens>& corpus, std::size_t min_count) {
  std::unordered_map<std::string, std::size_t> counts;
  std::vector<std::string> order;
  for (const Tokens& line : corpus) {
    for (const std::string& t : line) {
      if (counts[t]++ == 0) order.push_back(t);
    }
  }
  Vocab v;
  for (const std::string& t : order) {
    if (counts[t] >= min_count) v.add(t);
  }
  return v;
}

Vocab Vocab::from_tokens(std::vector<std::string> tokens) {
  if (tokens.size() < kSpecialCount) throw SchemaError("vocab is missing special tokens");
  for (std::size_t i = 0; i < kSpecialCount; ++i) {
    if (tokens[i] != kSpecials[i]) {
      throw SchemaError("vocab id " + std::to_string(i) + " must be '" +
                        std::string(kSpecials[i]) + "', found '" + tokens[i] + "'");
    }
  }
  Vocab v;
  for (std::size_t i = kSpecialCount; i < tokens.size(); ++i) {
    if (v.contains(tokens[i])) throw SchemaError("duplicate vocab token '" + tokens[i] + "'");
    v.add(tokens[i]);
  }
  return v;
}

std::size_t Vocab::add(const std::string& token) {
  auto [it, inserted] = ids_.emplace(token, tokens_.size());
  if (inserted) tokens_.push_back(token);
  return it->second;
}

std::size_t Vocab::id(std::string_view token) const {
  auto it = ids_.find(std::string(token));
  return it == ids_.end() ? kUnkId : it->second;
}

bool Vocab::contains(std::string_view token) const {
  return ids_.count(std::string(token)) > 0;
}

const std::string& Vocab::token(std::size_t id) const {
  if (id >= tokens_.size()) {
    throw IndexError("token id " + std::to_string(id) + " outside vocab of size " +
                     std::to_string(tokens_.size()));
  }
  return tokens_[id];
}

std::vector<std::size_t> Vocab::encode(const Tokens& tokens) const {
  std::vector<std::size_t> ids;
  ids.reserve(tokens.size());
  for (const std::string& t : tokens) ids.push_back(id(t));
  return ids;
}

Tokens Vocab::decode(const std::vector<std::size_t>& ids) const {
  Tokens out;
  for (std::size_t i : ids) {
    if (i >= kSpecialCount) out.push_back(token(i));
  }
  return out;
}

void Vocab::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write vocab " + path.string());
  out << nlohmann::json(tokens_).dump() << '\n';
}

Vocab Vocab::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read vocab " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError("vocab " + path.string() + ": " + e.what());
  }
  if (!j.is_array()) throw SchemaError("vocab " + path.string() + " is not a JSON array");
  std::vector<std::string> tokens;
  for (const auto& t : j) {
    if (!t.is_string()) throw SchemaError("vocab entries must be strings");
    tokens.push_back(t.get<std::string>());
  }
  return from_tokens(std::move(tokens));
}

}  // namespace vlf::text
