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

#ifndef VLF_TESTS_SUPPORT_LOCALIZER_FIXTURE_HPP_
#define VLF_TESTS_SUPPORT_LOCALIZER_FIXTURE_HPP_

#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "vlf/kernel/rng.hpp"
#include "vlf/localizer/rc_model.hpp"
#include "vlf/subtitle/timeline.hpp"
#include "vlf/text/tokenizer.hpp"

namespace vlf::testing {

inline std::shared_ptr<const subtitle::WordTimeline> timeline_of(
    const std::vector<std::string>& cue_texts, double cue_seconds) {
  subtitle::CueList cues;
  for (std::size_t i = 0; i < cue_texts.size(); ++i) {
    cues.push_back({cue_texts[i], {cue_seconds * static_cast<double>(i),
                                   cue_seconds * static_cast<double>(i + 1)}});
  }
  return std::make_shared<const subtitle::WordTimeline>(subtitle::build_word_timeline(cues));
}

inline std::shared_ptr<const localizer::FrameFeatureTrack> random_track(double duration,
                                                                        std::size_t dim,
                                                                        std::uint64_t seed) {
  kernel::Rng rng(seed);
  const auto n = static_cast<std::size_t>(std::ceil(duration));
  kernel::Tensor frames({n, dim});
  for (double& x : frames.values()) x = rng.normal();
  return std::make_shared<const localizer::FrameFeatureTrack>(
      localizer::make_track(std::move(frames), duration));
}

// Five videos of four cues each. The gold span is one whole cue whose
// wording echoes the question.
inline std::vector<localizer::LocalizerItem> five_localizer_items(std::size_t feature_dim = 8) {
  struct Spec {
    std::vector<std::string> cues;
    std::string question;
    std::size_t gold_cue;
  };
  const std::vector<Spec> specs = {
      {{"welcome back to the channel", "today we talk about posture",
        "press the knee toward the chest", "thanks for watching"},
       "how to stretch the lower back", 2},
      {{"hello everyone", "rinse the cut with clean water",
        "then cover it with a bandage", "see you next time"},
       "how to clean a small wound", 1},
      {{"this is a common problem", "many people ask about it",
        "remember to stay calm", "tilt the head and pinch the nose"},
       "how to stop a nosebleed", 3},
      {{"place the cuff above the elbow", "sit still for five minutes",
        "write the number down", "talk to your doctor"},
       "how to measure blood pressure at home", 0},
      {{"sprains happen often", "apply ice wrapped in a towel",
        "keep the ankle raised", "rest for two days"},
       "how to reduce swelling after a sprain", 1},
  };
  std::vector<localizer::LocalizerItem> items;
  for (std::size_t k = 0; k < specs.size(); ++k) {
    const double cue_seconds = 3.0;
    auto tl = timeline_of(specs[k].cues, cue_seconds);
    const double duration = cue_seconds * static_cast<double>(specs[k].cues.size());
    localizer::LocalizerItem item;
    item.video_id = "vid" + std::to_string(k);
    item.question_id = "q" + std::to_string(k);
    item.question = text::tokenize(specs[k].question);
    item.timeline = tl;
    item.gold = tl->cue_spans[specs[k].gold_cue];
    item.track = random_track(duration, feature_dim, 100 + k);
    item.duration_s = duration;
    items.push_back(std::move(item));
  }
  return items;
}

}  // namespace vlf::testing

#endif  // VLF_TESTS_SUPPORT_LOCALIZER_FIXTURE_HPP_
