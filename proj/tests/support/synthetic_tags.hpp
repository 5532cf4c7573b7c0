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

#ifndef VLF_TESTS_SUPPORT_SYNTHETIC_TAGS_HPP_
#define VLF_TESTS_SUPPORT_SYNTHETIC_TAGS_HPP_

#include <string>
#include <vector>

#include "vlf/kernel/rng.hpp"
#include "vlf/tagger/crf_model.hpp"

namespace vlf::testing {

// Sequences whose tags are decided by a cue word in each segment: "begin"
// opens an answer, "continue" extends it and "chatter" is unrelated talk.
// Filler words are shared across tags.
inline std::vector<tagger::TaggedSequence> separable_tag_corpus(std::size_t n,
                                                                std::uint64_t seed) {
  using tagger::Tag;
  static const char* kFiller[] = {"the", "pan", "knee", "press", "slowly", "water",
                                  "hold", "turn", "gently", "arm"};
  kernel::Rng rng(seed);
  std::vector<tagger::TaggedSequence> out;
  for (std::size_t s = 0; s < n; ++s) {
    tagger::TaggedSequence seq;
    seq.video_id = "syn" + std::to_string(s);
    const std::size_t k = 4 + rng.below(4);
    Tag prev = Tag::kOther;
    for (std::size_t i = 0; i < k; ++i) {
      Tag t;
      const std::size_t r = rng.below(3);
      if (r == 0) {
        t = Tag::kBegin;
      } else if (r == 1 && prev != Tag::kOther) {
        t = Tag::kInside;
      } else {
        t = Tag::kOther;
      }
      std::string text = t == Tag::kBegin ? "begin" : t == Tag::kInside ? "continue" : "chatter";
      const std::size_t words = 2 + rng.below(4);
      for (std::size_t w = 0; w < words; ++w) {
        text += std::string(" ") + kFiller[rng.below(10)];
      }
      seq.segments.push_back(text);
      seq.tags.push_back(t);
      prev = t;
    }
    out.push_back(std::move(seq));
  }
  return out;
}

}  // namespace vlf::testing

#endif  // VLF_TESTS_SUPPORT_SYNTHETIC_TAGS_HPP_
