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

#include "vlf/tagger/tags.hpp"

#include "vlf/errors.hpp"

namespace vlf::tagger {

std::string_view tag_name(Tag tag) {
  switch (tag) {
    case Tag::kBegin:
      return "B-Seg";
    case Tag::kInside:
      return "I-Seg";
    case Tag::kOther:
      return "O";
  }
  throw IndexError("invalid tag value");
}

Tag parse_tag(std::string_view name) {
  if (name == "B-Seg") return Tag::kBegin;
  if (name == "I-Seg") return Tag::kInside;
  if (name == "O") return Tag::kOther;
  throw IndexError("unknown tag '" + std::string(name) + "'");
}

Tag tag_from_index(std::size_t index) {
  if (index >= kNumTags) {
    throw IndexError("tag index " + std::to_string(index) + " outside {0, 1, 2}");
  }
  return static_cast<Tag>(index);
}

TagSequence repair_tags(TagSequence tags) {
  for (std::size_t i = 0; i < tags.size(); ++i) {
    if (tags[i] == Tag::kInside && (i == 0 || tags[i - 1] == Tag::kOther)) {
      tags[i] = Tag::kBegin;
    }
  }
  return tags;
}

std::vector<std::pair<std::size_t, std::size_t>> tag_runs(const TagSequence& tags) {
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  for (std::size_t i = 0; i < tags.size();) {
    if (tags[i] != Tag::kBegin) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < tags.size() && tags[j] == Tag::kInside) ++j;
    runs.emplace_back(i, j);
    i = j;
  }
  return runs;
}

}  // namespace vlf::tagger
