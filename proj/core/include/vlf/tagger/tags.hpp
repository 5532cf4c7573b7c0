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

#ifndef VLF_TAGGER_TAGS_HPP_
#define VLF_TAGGER_TAGS_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace vlf::tagger {

enum class Tag : std::size_t { kBegin = 0, kInside = 1, kOther = 2 };

inline constexpr std::size_t kNumTags = 3;

using TagSequence = std::vector<Tag>;

// "B-Seg", "I-Seg" or "O".
std::string_view tag_name(Tag tag);

// Throws IndexError for names outside the alphabet.
Tag parse_tag(std::string_view name);

// Throws IndexError when the index is not below kNumTags.
Tag tag_from_index(std::size_t index);

inline std::size_t tag_index(Tag tag) { return static_cast<std::size_t>(tag); }

// Turns a leading I-Seg, and any I-Seg following O, into B-Seg.
TagSequence repair_tags(TagSequence tags);

// Maximal runs of B-Seg followed by I-Seg as [begin, end) index pairs.
// Expects repaired tags.
std::vector<std::pair<std::size_t, std::size_t>> tag_runs(const TagSequence& tags);

}  // namespace vlf::tagger

#endif  // VLF_TAGGER_TAGS_HPP_
