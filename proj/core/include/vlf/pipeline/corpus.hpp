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

#ifndef VLF_PIPELINE_CORPUS_HPP_
#define VLF_PIPELINE_CORPUS_HPP_

#include <cstdint>
#include <filesystem>
#include <vector>

#include "vlf/localizer/rc_model.hpp"
#include "vlf/pipeline/classifier.hpp"
#include "vlf/pipeline/records.hpp"
#include "vlf/qg/qg_model.hpp"
#include "vlf/tagger/crf_model.hpp"

namespace vlf::pipeline {

// Annotation files, one JSON object per line:
//   tagging.jsonl       {video_id, segments: [text], tags: ["B-Seg" | "I-Seg" | "O"]}
//   questions.jsonl     {video_id, window, question}
//   localization.jsonl  {video_id, question_id, question, answer_start_s, answer_end_s}
//   classifier.jsonl    {text, label}
std::vector<tagger::TaggedSequence> load_tagging_corpus(const std::filesystem::path& path);
std::vector<qg::QgPair> load_qg_pairs(const std::filesystem::path& path);
std::vector<LabeledDoc> load_classifier_docs(const std::filesystem::path& path);

// Joins localization annotations with their videos: word timelines come
// from the subtitle files and tracks from the feature files when present.
std::vector<localizer::LocalizerItem> load_localizer_items(const std::filesystem::path& path,
                                                           const std::vector<VideoRecord>& videos,
                                                           std::size_t dedup_overlap_words = 3);

struct MiniCorpusInfo {
  std::size_t videos = 0;
  std::size_t answers = 0;
  std::size_t segment_budget = 0;
  std::size_t feature_dim = 0;
};

inline constexpr std::size_t kMiniCorpusSegmentBudget = 12;
inline constexpr std::size_t kMiniCorpusFeatureDim = 8;

// Writes the ten-video synthetic corpus: manifest.json, subtitles/,
// features/ and annotations/. Each instructional video plants one or two
// three-sentence procedures between unrelated chatter; every sentence is a
// cue and, under the corpus segment budget, its own segment. The output is
// a pure function of `seed`.
MiniCorpusInfo write_mini_corpus(const std::filesystem::path& dir, std::uint64_t seed = 7);

}  // namespace vlf::pipeline

#endif  // VLF_PIPELINE_CORPUS_HPP_
