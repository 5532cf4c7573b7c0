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

#ifndef VLF_SUBTITLE_TIMELINE_HPP_
#define VLF_SUBTITLE_TIMELINE_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "vlf/subtitle/cues.hpp"
#include "vlf/subtitle/time_span.hpp"

namespace vlf::subtitle {

// Word-level view of a subtitle track. Every word carries its own
// interpolated span plus the index (and span) of the cue it came from.
struct WordTimeline {
  std::vector<std::string> words;
  std::vector<TimeSpan> spans;
  std::vector<std::size_t> cue_index;
  std::vector<TimeSpan> cue_spans;

  std::size_t size() const { return words.size(); }
  bool empty() const { return words.empty(); }
  const TimeSpan& cue_span_of(std::size_t word) const {
    return cue_spans[cue_index[word]];
  }
  // (first cue start, last cue end); requires a non-empty timeline.
  TimeSpan envelope() const;
};

// Splits each cue on whitespace and divides the cue's span among its words
// in proportion to their character length. The last word of a cue always
// ends exactly at the cue end.
WordTimeline build_word_timeline(const CueList& cues);

// Indices of words whose span overlaps `window`. Touching endpoints do not
// count as overlap unless one side is a single instant.
std::vector<std::size_t> words_in_window(const WordTimeline& timeline,
                                         const TimeSpan& window);

}  // namespace vlf::subtitle

#endif  // VLF_SUBTITLE_TIMELINE_HPP_
