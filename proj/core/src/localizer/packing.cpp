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

#include "vlf/localizer/packing.hpp"

#include <algorithm>
#include <cmath>

#include "vlf/errors.hpp"
#include "vlf/text/vocab.hpp"

namespace vlf::localizer {

std::string packed_word(const std::string& word) {
  std::string w = text::normalize_word(word);
  return w.empty() ? std::string(text::kUnk) : w;
}

PackedInput pack_input(const text::Tokens& question, const subtitle::WordTimeline& timeline,
                       std::size_t max_len) {
  if (question.empty()) throw InputError("question must not be empty");
  if (question.size() + 1 > max_len) {
    throw InputError("question of " + std::to_string(question.size()) +
                     " tokens does not fit the packed length " + std::to_string(max_len));
  }
  PackedInput p;
  p.tokens = question;
  p.word_map.assign(question.size(), kNoWord);
  p.sep_index = p.tokens.size();
  p.tokens.emplace_back(text::kSep);
  p.word_map.push_back(kNoWord);
  const std::size_t room = max_len - p.tokens.size();
  const std::size_t n = std::min(room, timeline.size());
  for (std::size_t w = 0; w < n; ++w) {
    p.tokens.push_back(packed_word(timeline.words[w]));
    p.word_map.push_back(static_cast<std::ptrdiff_t>(w));
  }
  return p;
}

std::optional<std::pair<std::size_t, std::size_t>> gold_positions(
    const PackedInput& input, const subtitle::WordTimeline& timeline,
    const subtitle::TimeSpan& gold) {
  const std::vector<std::size_t> words = subtitle::words_in_window(timeline, gold);
  if (words.empty() || words.back() >= input.word_count()) return std::nullopt;
  return std::make_pair(input.first_word_position() + words.front(),
                        input.first_word_position() + words.back());
}

std::pair<std::size_t, std::size_t> decode_span(std::span<const double> start,
                                                std::span<const double> end,
                                                std::size_t max_span) {
  if (start.size() != end.size()) {
    throw DimensionError("start and end logits differ in length");
  }
  if (max_span == 0) throw ConfigError("max span must be positive");
  const std::size_t n = start.size();
  bool found = false;
  double best = 0.0;
  std::pair<std::size_t, std::size_t> arg{0, 0};
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(start[i])) continue;
    const std::size_t j_end = std::min(n, i + max_span);
    for (std::size_t j = i; j < j_end; ++j) {
      if (!std::isfinite(end[j])) continue;
      const double s = start[i] + end[j];
      if (!found || s > best) {
        found = true;
        best = s;
        arg = {i, j};
      }
    }
  }
  if (!found) throw InputError("no unmasked span to decode");
  return arg;
}

subtitle::TimeSpan span_to_timestamps(std::size_t i, std::size_t j, const PackedInput& input,
                                      const subtitle::WordTimeline& timeline,
                                      std::optional<double> duration) {
  if (i > j || !input.is_word(i) || !input.is_word(j)) {
    throw IntegrityError("span (" + std::to_string(i) + ", " + std::to_string(j) +
                         ") does not lie on subtitle words");
  }
  const auto wi = static_cast<std::size_t>(input.word_map[i]);
  const auto wj = static_cast<std::size_t>(input.word_map[j]);
  subtitle::TimeSpan out{timeline.cue_span_of(wi).start_s, timeline.cue_span_of(wj).end_s};
  if (duration) {
    out.start_s = std::clamp(out.start_s, 0.0, *duration);
    out.end_s = std::clamp(out.end_s, out.start_s, *duration);
  }
  return out;
}

}  // namespace vlf::localizer
