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

#include "vlf/pipeline/dataset.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <limits>
#include <map>
#include <set>
#include <thread>

#include "vlf/errors.hpp"
#include "vlf/kernel/rng.hpp"
#include "vlf/subtitle/cues.hpp"
#include "vlf/text/tokenizer.hpp"

namespace vlf::pipeline {

namespace fs = std::filesystem;

namespace {

struct VideoOutput {
  std::vector<VqaTriplet> triplets;
  std::vector<FilteredTriplet> filtered;
  std::optional<VideoFailure> failure;
};

VideoOutput process_video(const VideoRecord& video, const SegmentTagger& tagger,
                          const QuestionGenerator& generator, const DatasetConfig& config) {
  VideoOutput out;
  std::string stage = "ingest";
  try {
    const subtitle::WordTimeline timeline = video_timeline(video, config.dedup_overlap_words);
    stage = "segment";
    const std::vector<subtitle::Segment> segments = subtitle::align_timestamps(
        subtitle::topic_segment(timeline, subtitle::PunctuationSegmenter(config.segment_budget)),
        timeline);
    std::vector<std::string> texts;
    for (const subtitle::Segment& s : segments) texts.push_back(s.text);
    stage = "tag";
    const tagger::TagSequence tags = tagger.tag(texts);
    if (tags.size() != segments.size()) {
      throw IntegrityError("tagger returned " + std::to_string(tags.size()) + " tags for " +
                           std::to_string(segments.size()) + " segments");
    }
    stage = "question";
    for (const TimeSpan& span : answer_spans(tags, segments)) {
      const text::Tokens window = text::tokenize(text::join(qg::answer_window(timeline, span)));
      VqaTriplet t{video.video_id, window.empty() ? std::string() : generator.question(window),
                   span, tagger.provenance()};
      if (auto why = triplet_violation(t, video.duration_s)) {
        out.filtered.push_back({std::move(t), *why});
      } else {
        out.triplets.push_back(std::move(t));
      }
    }
  } catch (const std::exception& e) {
    out.triplets.clear();
    out.filtered.clear();
    out.failure = VideoFailure{video.video_id, stage, e.what()};
  }
  return out;
}

struct Summary {
  double mean = 0.0;
  double max = -std::numeric_limits<double>::infinity();
  double min = std::numeric_limits<double>::infinity();
};

void put_summary(metrics::EvalReport& r, const std::string& key, const std::vector<double>& xs) {
  Summary s;
  double total = 0.0;
  for (double x : xs) {
    total += x;
    s.max = std::max(s.max, x);
    s.min = std::min(s.min, x);
  }
  s.mean = total / static_cast<double>(xs.size());
  r.values[key + ".mean"] = s.mean;
  r.values[key + ".max"] = s.max;
  r.values[key + ".min"] = s.min;
}

std::map<std::string, const VideoRecord*> index_videos(const std::vector<VideoRecord>& videos) {
  std::map<std::string, const VideoRecord*> out;
  for (const VideoRecord& v : videos) out[v.video_id] = &v;
  return out;
}

const VideoRecord& find_video(const std::map<std::string, const VideoRecord*>& index,
                              const std::string& id) {
  auto it = index.find(id);
  if (it == index.end()) throw InputError("triplet refers to unknown video " + id);
  return *it->second;
}

}  // namespace

tagger::TagSequence CrfSegmentTagger::tag(const std::vector<std::string>& segment_texts) const {
  return tagger::predict_tags(model_, segment_texts);
}

tagger::TagSequence PromptSegmentTagger::tag(const std::vector<std::string>& segment_texts) const {
  return model_.predict_tags(segment_texts);
}

Provenance PromptSegmentTagger::provenance() const {
  Provenance p{"prompt", std::nullopt};
  for (const auto& [id, text] : tagger::builtin_templates()) {
    if (text == model_.config().prompt.template_text) p.template_id = id;
  }
  return p;
}

std::string QgQuestionGenerator::question(const text::Tokens& answer_window) const {
  return text::join(qg::generate(model_, answer_window, beam_).tokens);
}

std::vector<TimeSpan> answer_spans(const tagger::TagSequence& tags,
                                   const std::vector<subtitle::Segment>& segments) {
  if (tags.size() != segments.size()) {
    throw DimensionError("answer_spans needs one tag per segment");
  }
  std::vector<TimeSpan> out;
  for (const auto& [b, e] : tagger::tag_runs(tagger::repair_tags(tags))) {
    out.push_back({segments[b].span.start_s, segments[e - 1].span.end_s});
  }
  return out;
}

nlohmann::json DatasetConfig::to_json() const {
  return {{"segment_budget", segment_budget},
          {"dedup_overlap_words", dedup_overlap_words},
          {"seed", seed}};
}

nlohmann::json VideoFailure::to_json() const {
  return {{"video_id", video_id}, {"stage", stage}, {"message", message}};
}

subtitle::WordTimeline video_timeline(const VideoRecord& video, std::size_t dedup_overlap_words) {
  subtitle::CueList cues = subtitle::load_subtitles(video.subtitle_path);
  if (dedup_overlap_words > 0) cues = subtitle::dedup_overlap(cues, dedup_overlap_words);
  return subtitle::build_word_timeline(cues);
}

DatasetResult generate_dataset(const std::vector<VideoRecord>& videos, const SegmentTagger& tagger,
                               const QuestionGenerator& generator, const DatasetConfig& config) {
  if (config.segment_budget == 0) throw ConfigError("segment budget must be positive");
  std::vector<VideoOutput> outputs(videos.size());
  const std::size_t workers = std::max<std::size_t>(1, std::min(config.workers, videos.size()));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < videos.size(); i = next++) {
      outputs[i] = process_video(videos[i], tagger, generator, config);
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  DatasetResult result;
  for (VideoOutput& o : outputs) {
    for (VqaTriplet& t : o.triplets) result.triplets.push_back(std::move(t));
    for (FilteredTriplet& f : o.filtered) result.filtered.push_back(std::move(f));
    if (o.failure) result.failures.push_back(std::move(*o.failure));
  }
  return result;
}

metrics::EvalReport dataset_stats(const std::vector<VqaTriplet>& triplets,
                                  const std::vector<VideoRecord>& videos,
                                  std::size_t dedup_overlap_words) {
  if (triplets.empty()) throw InputError("dataset statistics need at least one triplet");
  const auto index = index_videos(videos);
  std::map<std::string, subtitle::WordTimeline> timelines;
  std::vector<double> q_len, sub_len, ans_len;
  for (const VqaTriplet& t : triplets) {
    auto it = timelines.find(t.video_id);
    if (it == timelines.end()) {
      it = timelines
               .emplace(t.video_id,
                        video_timeline(find_video(index, t.video_id), dedup_overlap_words))
               .first;
    }
    q_len.push_back(static_cast<double>(word_count(t.question)));
    sub_len.push_back(static_cast<double>(subtitle::words_in_window(it->second, t.answer).size()));
    ans_len.push_back(t.answer.duration());
  }
  metrics::EvalReport r;
  r.name = "dataset statistics";
  r.values["triplets"] = static_cast<double>(triplets.size());
  r.values["videos"] = static_cast<double>(timelines.size());
  put_summary(r, "question_length", q_len);
  put_summary(r, "subtitle_length", sub_len);
  put_summary(r, "answer_length_s", ans_len);
  r.config["dedup_overlap_words"] = dedup_overlap_words;
  return r;
}

nlohmann::json make_splits(const std::vector<VqaTriplet>& triplets, std::uint64_t seed) {
  std::set<std::string> distinct;
  for (const VqaTriplet& t : triplets) distinct.insert(t.video_id);
  std::vector<std::string> ids(distinct.begin(), distinct.end());
  kernel::Rng rng(seed);
  rng.shuffle(ids);
  const std::size_t n = ids.size();
  // Nearest-integer tenths, so eight videos still give one val and one test.
  const std::size_t n_test = (n + 5) / 10;
  const std::size_t n_val = (n + 5) / 10;
  const std::size_t n_train = n - n_val - n_test;
  auto slice = [&](std::size_t b, std::size_t e) {
    std::vector<std::string> s(ids.begin() + static_cast<std::ptrdiff_t>(b),
                               ids.begin() + static_cast<std::ptrdiff_t>(e));
    std::sort(s.begin(), s.end());
    return s;
  };
  return {{"seed", seed},
          {"train", slice(0, n_train)},
          {"val", slice(n_train, n_train + n_val)},
          {"test", slice(n_train + n_val, n)}};
}

void write_dataset(const fs::path& dir, const DatasetResult& result,
                   const std::vector<VideoRecord>& videos, const DatasetConfig& config) {
  fs::create_directories(dir);
  write_text_file(dir / "triplets.jsonl", triplets_to_jsonl(result.triplets));
  nlohmann::json stats = nullptr;
  if (!result.triplets.empty()) {
    stats = dataset_stats(result.triplets, videos, config.dedup_overlap_words).to_json();
  }
  write_text_file(dir / "stats.json", stats.dump(2) + "\n");
  write_text_file(dir / "splits.json", make_splits(result.triplets, config.seed).dump(2) + "\n");
  nlohmann::json failures = {{"config", config.to_json()},
                             {"failures", nlohmann::json::array()},
                             {"filtered", nlohmann::json::array()}};
  for (const VideoFailure& f : result.failures) failures["failures"].push_back(f.to_json());
  for (const FilteredTriplet& f : result.filtered) {
    failures["filtered"].push_back({{"triplet", f.triplet.to_json()}, {"reason", f.reason}});
  }
  write_text_file(dir / "failures.json", failures.dump(2) + "\n");
}

std::vector<std::size_t> sample_for_review(std::size_t population, std::size_t n,
                                           std::uint64_t seed) {
  if (n > population) {
    throw InputError("cannot sample " + std::to_string(n) + " of " + std::to_string(population) +
                     " triplets");
  }
  std::vector<std::size_t> idx(population);
  for (std::size_t i = 0; i < population; ++i) idx[i] = i;
  kernel::Rng rng(seed);
  // Partial Fisher-Yates: the first n slots are a uniform draw.
  for (std::size_t i = 0; i < n; ++i) std::swap(idx[i], idx[i + rng.below(population - i)]);
  idx.resize(n);
  return idx;
}

nlohmann::json ReviewSample::to_json() const {
  return {{"sample_id", sample_id},
          {"triplet", triplet.to_json()},
          {"excerpt", excerpt},
          {"video_url", video_url}};
}

ReviewSample ReviewSample::from_json(const nlohmann::json& j) {
  ReviewSample s;
  try {
    s.sample_id = j.at("sample_id").get<std::string>();
    s.triplet = VqaTriplet::from_json(j.at("triplet"));
    s.excerpt = j.value("excerpt", std::string());
    s.video_url = j.value("video_url", std::string());
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("review sample: ") + e.what());
  }
  return s;
}

std::vector<ReviewSample> build_review_set(const std::vector<VqaTriplet>& triplets,
                                           const std::vector<std::size_t>& indices,
                                           const std::vector<VideoRecord>& videos,
                                           std::size_t dedup_overlap_words) {
  const auto index = index_videos(videos);
  std::map<std::string, subtitle::WordTimeline> timelines;
  std::vector<ReviewSample> out;
  char id[32];
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (indices[k] >= triplets.size()) throw IndexError("review index out of range");
    const VqaTriplet& t = triplets[indices[k]];
    auto it = timelines.find(t.video_id);
    if (it == timelines.end()) {
      it = timelines
               .emplace(t.video_id,
                        video_timeline(find_video(index, t.video_id), dedup_overlap_words))
               .first;
    }
    std::snprintf(id, sizeof id, "s%04zu", k + 1);
    ReviewSample s;
    s.sample_id = id;
    s.triplet = t;
    s.excerpt = text::join(qg::answer_window(it->second, t.answer));
    s.video_url = "video://" + t.video_id + "#t=" + std::to_string(static_cast<long>(t.answer.start_s));
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace vlf::pipeline
