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

#ifndef VLF_LOCALIZER_PACKING_HPP_
#define VLF_LOCALIZER_PACKING_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "vlf/subtitle/time_span.hpp"
#include "vlf/subtitle/timeline.hpp"
#include "vlf/text/tokenizer.hpp"

namespace vlf::localizer {

inline constexpr std::ptrdiff_t kNoWord = -1;

// Question tokens, one separator, then one token per subtitle word.
struct PackedInput {
  text::Tokens tokens;
  std::vector<std::ptrdiff_t> word_map;  // timeline index, or kNoWord
  std::size_t sep_index = 0;

  std::size_t size() const { return tokens.size(); }
  std::size_t first_word_position() const { return sep_index + 1; }
  std::size_t word_count() const { return tokens.size() - sep_index - 1; }
  bool is_word(std::size_t position) const {
    return position < word_map.size() && word_map[position] != kNoWord;
  }
};

// Subtitle words are normalised with text::normalize_word ("<unk>" when
// nothing survives). The subtitle tail is truncated to fit max_len; the
// question never is. Throws InputError for an empty question or one that
// leaves no room for the separator.
PackedInput pack_input(const text::Tokens& question, const subtitle::WordTimeline& timeline,
                       std::size_t max_len = 1024);

// Surface token used for a timeline word inside a packed input.
std::string packed_word(const std::string& word);

// Packed positions of the first and last timeline word overlapping `gold`,
// or nothing when the window holds no word or reaches past the truncation.
std::optional<std::pair<std::size_t, std::size_t>> gold_positions(
    const PackedInput& input, const subtitle::WordTimeline& timeline,
    const subtitle::TimeSpan& gold);

// argmax of start[i] + end[j] over i <= j, j - i < max_span, with both
// logits finite (masked positions carry -inf). Ties go to the smallest i,
// then the smallest j. Throws InputError when every position is masked.
std::pair<std::size_t, std::size_t> decode_span(std::span<const double> start,
                                                std::span<const double> end,
                                                std::size_t max_span = 256);

// (cue start of word(i), cue end of word(j)), clamped to [0, duration]
// when a duration is given. Throws IntegrityError when i > j or either
// position is not a subtitle word.
subtitle::TimeSpan span_to_timestamps(std::size_t i, std::size_t j, const PackedInput& input,
                                      const subtitle::WordTimeline& timeline,
                                      std::optional<double> duration = std::nullopt);

}  // namespace vlf::localizer

#endif  // VLF_LOCALIZER_PACKING_HPP_
