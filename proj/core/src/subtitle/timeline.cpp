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

#include "vlf/subtitle/timeline.hpp"

#include <cctype>

#include "vlf/errors.hpp"

namespace vlf::subtitle {

TimeSpan WordTimeline::envelope() const {
  if (cue_spans.empty()) throw InputError("envelope of an empty timeline");
  return {cue_spans.front().start_s, cue_spans.back().end_s};
}

WordTimeline build_word_timeline(const CueList& cues) {
  WordTimeline tl;
  for (const Cue& cue : cues) {
    std::vector<std::string> words;
    std::size_t i = 0;
    const std::string& s = cue.text;
    while (i < s.size()) {
      while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
      std::size_t j = i;
      while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
      if (j > i) words.emplace_back(s.substr(i, j - i));
      i = j;
    }
    if (words.empty()) continue;
    const std::size_t cue_id = tl.cue_spans.size();
    tl.cue_spans.push_back(cue.span);
    std::size_t total_chars = 0;
    for (const auto& w : words) total_chars += w.size();
    const double start = cue.span.start_s;
    const double dur = cue.span.duration();
    std::size_t cum = 0;
    for (std::size_t k = 0; k < words.size(); ++k) {
      const double a = start + dur * static_cast<double>(cum) / static_cast<double>(total_chars);
      cum += words[k].size();
      const double b = k + 1 == words.size()
                           ? cue.span.end_s
                           : start + dur * static_cast<double>(cum) /
                                         static_cast<double>(total_chars);
      tl.words.push_back(std::move(words[k]));
      tl.spans.push_back({a, b});
      tl.cue_index.push_back(cue_id);
    }
  }
  return tl;
}

std::vector<std::size_t> words_in_window(const WordTimeline& timeline,
                                         const TimeSpan& window) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < timeline.size(); ++i) {
    const TimeSpan& s = timeline.spans[i];
    const double lo = std::max(s.start_s, window.start_s);
    const double hi = std::min(s.end_s, window.end_s);
    const bool point = s.duration() == 0.0 || window.duration() == 0.0;
    if (hi > lo || (point && hi >= lo)) out.push_back(i);
  }
  return out;
}

}  // namespace vlf::subtitle
