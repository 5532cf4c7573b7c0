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

#ifndef VLF_TESTS_SUPPORT_QG_FIXTURE_HPP_
#define VLF_TESTS_SUPPORT_QG_FIXTURE_HPP_

#include <vector>

#include "vlf/qg/qg_model.hpp"

namespace vlf::testing {

// Five answer windows with their questions.
inline std::vector<qg::QgPair> five_qg_pairs() {
  return {
      {{"press", "the", "knee", "toward", "the", "chest"},
       {"how", "to", "stretch", "the", "lower", "back"}},
      {{"rinse", "the", "cut", "with", "clean", "water"},
       {"how", "to", "clean", "a", "small", "wound"}},
      {{"tilt", "the", "head", "and", "pinch", "the", "nose"},
       {"how", "to", "stop", "a", "nosebleed"}},
      {{"place", "the", "cuff", "above", "the", "elbow"},
       {"how", "to", "measure", "blood", "pressure", "at", "home"}},
      {{"apply", "ice", "wrapped", "in", "a", "towel"},
       {"how", "to", "reduce", "swelling", "after", "a", "sprain"}},
  };
}

inline text::Vocab vocab_for(const std::vector<qg::QgPair>& pairs) {
  std::vector<text::Tokens> corpus;
  for (const auto& p : pairs) {
    corpus.push_back(p.window);
    corpus.push_back(p.question);
  }
  return text::Vocab::build(corpus);
}

}  // namespace vlf::testing

#endif  // VLF_TESTS_SUPPORT_QG_FIXTURE_HPP_
