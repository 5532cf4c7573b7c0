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

#ifndef VLF_PIPELINE_DATASET_HPP_
#define VLF_PIPELINE_DATASET_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vlf/metrics/report.hpp"
#include "vlf/pipeline/records.hpp"
#include "vlf/qg/qg_model.hpp"
#include "vlf/subtitle/segments.hpp"
#include "vlf/tagger/crf_model.hpp"
#include "vlf/tagger/prompt.hpp"

namespace vlf::pipeline {

class SegmentTagger {
 public:
  virtual ~SegmentTagger() = default;
  virtual tagger::TagSequence tag(const std::vector<std::string>& segment_texts) const = 0;
  virtual Provenance provenance() const = 0;
};

class CrfSegmentTagger : public SegmentTagger {
 public:
  explicit CrfSegmentTagger(const tagger::CrfModel& model) : model_(model) {}
  tagger::TagSequence tag(const std::vector<std::string>& segment_texts) const override;
  Provenance provenance() const override { return {"crf", std::nullopt}; }

 private:
  const tagger::CrfModel& model_;
};

// Provenance carries the built-in template id when the model's template is
// one of the nine built-ins.
class PromptSegmentTagger : public SegmentTagger {
 public:
  explicit PromptSegmentTagger(const tagger::PromptTagger& model) : model_(model) {}
  tagger::TagSequence tag(const std::vector<std::string>& segment_texts) const override;
  Provenance provenance() const override;

 private:
  const tagger::PromptTagger& model_;
};

class QuestionGenerator {
 public:
  virtual ~QuestionGenerator() = default;
  virtual std::string question(const text::Tokens& answer_window) const = 0;
};

class QgQuestionGenerator : public QuestionGenerator {
 public:
  QgQuestionGenerator(const qg::QgModel& model, std::size_t beam) : model_(model), beam_(beam) {}
  std::string question(const text::Tokens& answer_window) const override;

 private:
  const qg::QgModel& model_;
  std::size_t beam_;
};

// Answer spans from maximal B-rooted runs of the repaired tags, each from
// its first segment's start to its last segment's end.
std::vector<TimeSpan> answer_spans(const tagger::TagSequence& tags,
                                   const std::vector<subtitle::Segment>& segments);

struct DatasetConfig {
  std::size_t segment_budget = 40;
  std::size_t dedup_overlap_words = 3;
  std::size_t workers = 1;
  std::uint64_t seed = 0;

  nlohmann::json to_json() const;
};

struct VideoFailure {
  std::string video_id;
  std::string stage;
  std::string message;

  nlohmann::json to_json() const;
};

struct FilteredTriplet {
  VqaTriplet triplet;
  std::string reason;
};

struct DatasetResult {
  std::vector<VqaTriplet> triplets;
  std::vector<FilteredTriplet> filtered;
  std::vector<VideoFailure> failures;
};

// Subtitle words of a video after overlap dedup, as used by every stage.
subtitle::WordTimeline video_timeline(const VideoRecord& video, std::size_t dedup_overlap_words);

// Per video: subtitles -> segments -> tags -> answer spans -> questions ->
// invariant filter. Videos run on `workers` threads; output order follows
// the input order, so the result does not depend on scheduling. A failure
// in one video is recorded and the rest continue.
DatasetResult generate_dataset(const std::vector<VideoRecord>& videos, const SegmentTagger& tagger,
                               const QuestionGenerator& generator, const DatasetConfig& config);

// Triplet and video counts plus mean/max/min of question length (words),
// answer subtitle length (words inside the answer span) and answer length
// (seconds). Throws InputError for an empty dataset.
metrics::EvalReport dataset_stats(const std::vector<VqaTriplet>& triplets,
                                  const std::vector<VideoRecord>& videos,
                                  std::size_t dedup_overlap_words = 3);

// Video-level train/val/test split (80/10/10 after a seeded shuffle of the
// sorted distinct video ids): {"train": [...], "val": [...], "test": [...]}.
nlohmann::json make_splits(const std::vector<VqaTriplet>& triplets, std::uint64_t seed);

// Writes triplets.jsonl, stats.json, splits.json and failures.json.
void write_dataset(const std::filesystem::path& dir, const DatasetResult& result,
                   const std::vector<VideoRecord>& videos, const DatasetConfig& config);

inline constexpr std::size_t kDefaultReviewSamples = 308;

// n distinct indices drawn uniformly without replacement, in draw order.
std::vector<std::size_t> sample_for_review(std::size_t population, std::size_t n,
                                           std::uint64_t seed);

struct ReviewSample {
  std::string sample_id;
  VqaTriplet triplet;
  std::string excerpt;
  std::string video_url;

  nlohmann::json to_json() const;
  static ReviewSample from_json(const nlohmann::json& j);
};

// Review set for the sampled triplets; the excerpt is the subtitle text
// inside the answer span and the link points at the video start offset.
std::vector<ReviewSample> build_review_set(const std::vector<VqaTriplet>& triplets,
                                           const std::vector<std::size_t>& indices,
                                           const std::vector<VideoRecord>& videos,
                                           std::size_t dedup_overlap_words = 3);

}  // namespace vlf::pipeline

#endif  // VLF_PIPELINE_DATASET_HPP_
