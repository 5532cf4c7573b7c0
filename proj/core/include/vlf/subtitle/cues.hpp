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

#ifndef VLF_SUBTITLE_CUES_HPP_
#define VLF_SUBTITLE_CUES_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "vlf/subtitle/time_span.hpp"

namespace vlf::subtitle {

struct Cue {
  std::string text;
  TimeSpan span;

  friend bool operator==(const Cue&, const Cue&) = default;
};

// Cues sorted by start time, each with non-empty normalized text.
using CueList = std::vector<Cue>;

enum class SubtitleFormat { kSrt, kWebVtt };

SubtitleFormat format_from_path(const std::filesystem::path& path);

// Parses SRT ("HH:MM:SS,mmm") or WebVTT ("HH:MM:SS.mmm", hours optional)
// cues. Markup tags are stripped, entities decoded and whitespace collapsed;
// cues left empty by that are dropped. A leading UTF-8 BOM is tolerated.
// Throws ParseError (with the 1-based line number) on malformed timing
// lines or cues whose end precedes their start.
CueList parse_subtitles(std::string_view bytes, SubtitleFormat format);

CueList load_subtitles(const std::filesystem::path& path);

// Inverse of parse_subtitles for normalized cues; times are written at
// millisecond resolution.
std::string serialize_subtitles(const CueList& cues, SubtitleFormat format);

// Formats seconds as HH:MM:SS<sep>mmm.
std::string format_timestamp(double seconds, char millis_separator);

// Auto-captions repeat the tail of the previous cue. When a cue begins with
// the longest suffix of the previous kept cue that is at least
// `min_overlap_words` long, that prefix is removed; cues emptied by the
// removal are dropped.
CueList dedup_overlap(const CueList& cues, std::size_t min_overlap_words = 3);

}  // namespace vlf::subtitle

#endif  // VLF_SUBTITLE_CUES_HPP_
