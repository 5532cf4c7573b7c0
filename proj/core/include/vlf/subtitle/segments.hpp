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

#ifndef VLF_SUBTITLE_SEGMENTS_HPP_
#define VLF_SUBTITLE_SEGMENTS_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "vlf/subtitle/time_span.hpp"
#include "vlf/subtitle/timeline.hpp"

namespace vlf::subtitle {

// Contiguous run of timeline words [begin, end).
struct Segment {
  std::size_t begin = 0;
  std::size_t end = 0;
  TimeSpan span;
  std::string text;

  std::size_t word_count() const { return end - begin; }
  friend bool operator==(const Segment&, const Segment&) = default;
};

// Supplies segment start indices for a timeline. A valid answer starts at
// 0, is strictly increasing and stays below timeline.size().
class TopicSegmenter {
 public:
  virtual ~TopicSegmenter() = default;
  virtual std::vector<std::size_t> boundaries(const WordTimeline& timeline) const = 0;
};

// Splits after sentence-final punctuation (. ! ?), then merges consecutive
// sentences while the merged segment stays within `word_budget` words.
// Sentences longer than the budget are cut into budget-sized pieces.
class PunctuationSegmenter : public TopicSegmenter {
 public:
  explicit PunctuationSegmenter(std::size_t word_budget = 40);
  std::vector<std::size_t> boundaries(const WordTimeline& timeline) const override;

 private:
  std::size_t budget_;
};

// Throws InputError on an empty timeline and IntegrityError when the
// segmenter's boundaries do not describe a partition.
std::vector<Segment> topic_segment(const WordTimeline& timeline,
                                   const TopicSegmenter& segmenter);

// Recomputes each segment's span as (first word start, last word end).
std::vector<Segment> align_timestamps(std::vector<Segment> segments,
                                      const WordTimeline& timeline);

std::string join_words(const WordTimeline& timeline, std::size_t begin,
                       std::size_t end);

}  // namespace vlf::subtitle

#endif  // VLF_SUBTITLE_SEGMENTS_HPP_
