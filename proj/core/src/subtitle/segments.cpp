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

#include "vlf/subtitle/segments.hpp"

#include "vlf/errors.hpp"

namespace vlf::subtitle {

namespace {

bool ends_sentence(const std::string& word) {
  std::size_t n = word.size();
  // Closing quotes and brackets may trail the punctuation.
  while (n > 0 && (word[n - 1] == '"' || word[n - 1] == '\'' || word[n - 1] == ')')) --n;
  if (n == 0) return false;
  const char c = word[n - 1];
  return c == '.' || c == '!' || c == '?';
}

}  // namespace

PunctuationSegmenter::PunctuationSegmenter(std::size_t word_budget)
    : budget_(word_budget) {
  if (budget_ == 0) throw ConfigError("segment word budget must be positive");
}

std::vector<std::size_t> PunctuationSegmenter::boundaries(
    const WordTimeline& timeline) const {
  // Sentences as [begin, end) runs, with over-long ones pre-cut.
  std::vector<std::pair<std::size_t, std::size_t>> pieces;
  std::size_t begin = 0;
  for (std::size_t i = 0; i < timeline.size(); ++i) {
    if (ends_sentence(timeline.words[i]) || i + 1 == timeline.size()) {
      for (std::size_t b = begin; b <= i; b += budget_) {
        pieces.emplace_back(b, std::min(b + budget_, i + 1));
      }
      begin = i + 1;
    }
  }
  std::vector<std::size_t> starts;
  std::size_t current_begin = 0;
  std::size_t current_len = 0;
  for (const auto& [b, e] : pieces) {
    const std::size_t len = e - b;
    if (current_len > 0 && current_len + len > budget_) {
      starts.push_back(current_begin);
      current_len = 0;
    }
    if (current_len == 0) current_begin = b;
    current_len += len;
  }
  if (current_len > 0) starts.push_back(current_begin);
  return starts;
}

std::string join_words(const WordTimeline& timeline, std::size_t begin,
                       std::size_t end) {
  std::string out;
  for (std::size_t i = begin; i < end; ++i) {
    if (i > begin) out += ' ';
    out += timeline.words[i];
  }
  return out;
}

std::vector<Segment> topic_segment(const WordTimeline& timeline,
                                   const TopicSegmenter& segmenter) {
  if (timeline.empty()) throw InputError("cannot segment an empty timeline");
  const std::vector<std::size_t> starts = segmenter.boundaries(timeline);
  if (starts.empty() || starts.front() != 0) {
    throw IntegrityError("segment boundaries must start at word 0");
  }
  for (std::size_t k = 0; k < starts.size(); ++k) {
    if (starts[k] >= timeline.size() || (k > 0 && starts[k] <= starts[k - 1])) {
      throw IntegrityError("segment boundaries are not a strictly increasing "
                           "sequence inside the timeline");
    }
  }
  std::vector<Segment> segments;
  for (std::size_t k = 0; k < starts.size(); ++k) {
    Segment s;
    s.begin = starts[k];
    s.end = k + 1 < starts.size() ? starts[k + 1] : timeline.size();
    s.text = join_words(timeline, s.begin, s.end);
    segments.push_back(std::move(s));
  }
  return align_timestamps(std::move(segments), timeline);
}

std::vector<Segment> align_timestamps(std::vector<Segment> segments,
                                      const WordTimeline& timeline) {
  for (Segment& s : segments) {
    if (s.begin >= s.end || s.end > timeline.size()) {
      throw IntegrityError("segment [" + std::to_string(s.begin) + ", " +
                           std::to_string(s.end) + ") is empty or out of range");
    }
    s.span = {timeline.spans[s.begin].start_s, timeline.spans[s.end - 1].end_s};
  }
  return segments;
}

}  // namespace vlf::subtitle
