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

#include "vlf/pipeline/corpus.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "vlf/errors.hpp"
#include "vlf/kernel/rng.hpp"
#include "vlf/localizer/vision.hpp"
#include "vlf/pipeline/dataset.hpp"
#include "vlf/subtitle/cues.hpp"
#include "vlf/subtitle/segments.hpp"
#include "vlf/tagger/tags.hpp"
#include "vlf/text/tokenizer.hpp"

namespace vlf::pipeline {

namespace fs = std::filesystem;

namespace {

template <typename Fn>
void for_each_json_line(const fs::path& path, Fn&& fn) {
  std::istringstream in(read_text_file(path));
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      fn(nlohmann::json::parse(line));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(line_no, path.filename().string() + ": " + e.what());
    }
  }
}

struct Procedure {
  const char* question;
  const char* steps[3];
};

const Procedure kProcedures[] = {
    {"how to stop bleeding from a small cut",
     {"first press a clean cloth on the cut firmly.",
      "next keep steady pressure for ten full minutes.",
      "then cover the cut with a sterile bandage."}},
    {"how to check your pulse at the wrist",
     {"first place two fingers below your wrist crease.",
      "next count the beats you feel for thirty seconds.",
      "then double that number to get your rate."}},
    {"how to use an asthma inhaler correctly",
     {"first shake the inhaler well and remove the cap.",
      "next breathe out fully and seal your lips around it.",
      "then press down once and inhale slowly and deeply."}},
    {"how to apply a cold pack to a sprain",
     {"first wrap the cold pack in a thin towel.",
      "next rest the pack on the swollen ankle gently.",
      "then remove it after fifteen minutes to protect skin."}},
    {"how to clean a scraped knee at home",
     {"first rinse the scraped knee under cool running water.",
      "next wash around the wound with mild soap.",
      "then pat the skin dry with a clean towel."}},
    {"how to measure blood pressure with a cuff",
     {"first sit quietly with your arm resting on a table.",
      "next wrap the cuff snugly above your elbow.",
      "then press start and keep still until it beeps."}},
    {"how to do a neck stretch for stiffness",
     {"first sit tall and relax both of your shoulders.",
      "next tilt your head slowly toward one shoulder.",
      "then hold the stretch for twenty seconds each side."}},
    {"how to wash your hands properly with soap",
     {"first wet your hands and apply enough soap.",
      "next scrub between your fingers for twenty seconds.",
      "then rinse well and dry with a paper towel."}},
    {"how to take a temperature under the tongue",
     {"first wait fifteen minutes after eating or drinking.",
      "next place the thermometer tip under your tongue.",
      "then close your lips and wait for the beep."}},
    {"how to put on a knee brace",
     {"first sit down and straighten your leg fully.",
      "next slide the brace up over your kneecap.",
      "then fasten the straps so they feel snug."}},
    {"how to perform chest compressions on an adult",
     {"first place the heel of your hand on the chest.",
      "next push hard and fast at least two inches.",
      "then let the chest rise fully between compressions."}},
    {"how to relieve a leg cramp quickly",
     {"first straighten the cramped leg out in front of you.",
      "next pull your toes gently back toward your shin.",
      "then massage the tight muscle until it relaxes."}},
};

const char* const kChatter[] = {
    "welcome back to the channel and thanks for joining me.",
    "today i want to share something many viewers asked about.",
    "please remember this video is not a substitute for a doctor.",
    "if you found this helpful please like and subscribe below.",
    "let me know in the comments what you want next.",
    "that is all for today so take care of yourself.",
    "i filmed this in my kitchen on a rainy afternoon.",
    "my sister is a nurse and she taught me this.",
    "before we begin grab a glass of water and relax.",
    "see you again next week with another short video.",
};

const char* const kNews[] = {
    "new research suggests walking daily may improve sleep quality.",
    "doctors say more studies are needed before firm advice.",
    "the study followed two thousand adults for five years.",
    "researchers also looked at diet and stress levels.",
    "hospitals in the region reported fewer flu cases this winter.",
    "experts expect vaccine supplies to remain stable this season.",
    "a panel of nurses discussed staffing at the annual meeting.",
    "the report will be published in a journal next month.",
};

const char* const kTravel[] = {
    "this market sells the freshest fruit in the whole city.",
    "we walked along the river until the sun went down.",
    "the old bridge was built more than two centuries ago.",
    "our guide told us stories about the fishing village.",
    "the train ride through the mountains took six hours.",
    "we tried a spicy noodle soup at a street stall.",
    "the museum was closed so we visited the gardens instead.",
    "tomorrow we plan to rent bikes and explore the coast.",
};

// Entries >= 0 are chatter indices; -(p + 1) plants procedure p.
struct VideoPlan {
  std::vector<int> parts;
  const char* category;
  subtitle::SubtitleFormat format;
};

std::vector<VideoPlan> video_plans() {
  using F = subtitle::SubtitleFormat;
  return {
      {{0, 1, -1, 3}, kMedicalInstructional, F::kSrt},
      {{0, -2, 2, -3, 5}, kMedicalInstructional, F::kSrt},
      {{1, 6, -4, 4}, kMedicalInstructional, F::kWebVtt},
      {{-5, 7, 3}, kMedicalInstructional, F::kSrt},
      {{8, -6, 2, -7, 9}, kMedicalInstructional, F::kSrt},
      {{0, -8, 4, 5}, kMedicalInstructional, F::kWebVtt},
      {{1, -9, 6, -10, 9}, kMedicalInstructional, F::kSrt},
      {{7, -11, 8, -12, 5}, kMedicalInstructional, F::kSrt},
      {{}, kMedicalNonInstructional, F::kWebVtt},
      {{}, kNonMedical, F::kSrt},
  };
}

constexpr double kCueStride = 4.0;
constexpr double kCueLength = 3.5;
constexpr double kLeadIn = 1.0;
constexpr double kTail = 2.0;

std::string pick_doc(kernel::Rng& rng, const std::vector<std::string>& pool, std::size_t n) {
  std::vector<std::string> copy = pool;
  rng.shuffle(copy);
  std::string out;
  for (std::size_t i = 0; i < n; ++i) out += (i ? " " : "") + copy[i];
  return out;
}

}  // namespace

std::vector<tagger::TaggedSequence> load_tagging_corpus(const fs::path& path) {
  std::vector<tagger::TaggedSequence> out;
  for_each_json_line(path, [&](const nlohmann::json& j) {
    tagger::TaggedSequence s;
    s.video_id = j.at("video_id").get<std::string>();
    s.segments = j.at("segments").get<std::vector<std::string>>();
    for (const auto& t : j.at("tags")) s.tags.push_back(tagger::parse_tag(t.get<std::string>()));
    out.push_back(std::move(s));
  });
  tagger::validate_corpus(out);
  return out;
}

std::vector<qg::QgPair> load_qg_pairs(const fs::path& path) {
  std::vector<qg::QgPair> out;
  for_each_json_line(path, [&](const nlohmann::json& j) {
    out.push_back({text::tokenize(j.at("window").get<std::string>()),
                   text::tokenize(j.at("question").get<std::string>())});
  });
  return out;
}

std::vector<LabeledDoc> load_classifier_docs(const fs::path& path) {
  std::vector<LabeledDoc> out;
  for_each_json_line(path, [&](const nlohmann::json& j) {
    out.push_back({j.at("text").get<std::string>(), j.at("label").get<std::string>()});
  });
  return out;
}

std::vector<localizer::LocalizerItem> load_localizer_items(const fs::path& path,
                                                           const std::vector<VideoRecord>& videos,
                                                           std::size_t dedup_overlap_words) {
  std::map<std::string, const VideoRecord*> by_id;
  for (const VideoRecord& v : videos) by_id[v.video_id] = &v;
  std::map<std::string, std::shared_ptr<const subtitle::WordTimeline>> timelines;
  std::map<std::string, std::shared_ptr<const localizer::FrameFeatureTrack>> tracks;
  std::vector<localizer::LocalizerItem> out;
  for_each_json_line(path, [&](const nlohmann::json& j) {
    localizer::LocalizerItem item;
    item.video_id = j.at("video_id").get<std::string>();
    item.question_id = j.at("question_id").get<std::string>();
    item.question = text::tokenize(j.at("question").get<std::string>());
    item.gold = subtitle::make_span(j.at("answer_start_s").get<double>(),
                                    j.at("answer_end_s").get<double>());
    auto it = by_id.find(item.video_id);
    if (it == by_id.end()) throw InputError("annotation refers to unknown video " + item.video_id);
    const VideoRecord& v = *it->second;
    if (!timelines.count(v.video_id)) {
      timelines[v.video_id] = std::make_shared<const subtitle::WordTimeline>(
          video_timeline(v, dedup_overlap_words));
      if (v.feature_path) {
        tracks[v.video_id] = std::make_shared<const localizer::FrameFeatureTrack>(
            localizer::load_feature_track(*v.feature_path));
      }
    }
    item.timeline = timelines[v.video_id];
    if (auto t = tracks.find(v.video_id); t != tracks.end()) item.track = t->second;
    item.duration_s = v.duration_s;
    out.push_back(std::move(item));
  });
  return out;
}

MiniCorpusInfo write_mini_corpus(const fs::path& dir, std::uint64_t seed) {
  MiniCorpusInfo info;
  info.segment_budget = kMiniCorpusSegmentBudget;
  info.feature_dim = kMiniCorpusFeatureDim;
  fs::create_directories(dir / "subtitles");
  fs::create_directories(dir / "features");
  fs::create_directories(dir / "annotations");
  nlohmann::json manifest = nlohmann::json::array();
  std::string tagging, questions, localization;
  const std::vector<std::string> news(std::begin(kNews), std::end(kNews));
  const std::vector<std::string> travel(std::begin(kTravel), std::end(kTravel));
  const std::vector<VideoPlan> plans = video_plans();
  for (std::size_t k = 0; k < plans.size(); ++k) {
    char id[16];
    std::snprintf(id, sizeof id, "vid%02zu", k);
    const VideoPlan& plan = plans[k];
    kernel::Rng rng(kernel::derive_seed(seed, k));
    std::vector<std::string> sentences;
    std::vector<tagger::Tag> tags;
    std::vector<std::pair<std::size_t, int>> answers;  // (first cue, procedure)
    if (plan.parts.empty()) {
      const auto& pool = plan.category == std::string(kNonMedical) ? travel : news;
      std::vector<std::string> copy = pool;
      rng.shuffle(copy);
      for (std::size_t i = 0; i < 6; ++i) {
        sentences.push_back(copy[i]);
        tags.push_back(tagger::Tag::kOther);
      }
    }
    for (int part : plan.parts) {
      if (part >= 0) {
        sentences.push_back(kChatter[part]);
        tags.push_back(tagger::Tag::kOther);
        continue;
      }
      const int p = -part - 1;
      answers.emplace_back(sentences.size(), p);
      for (std::size_t s = 0; s < 3; ++s) {
        sentences.push_back(kProcedures[p].steps[s]);
        tags.push_back(s == 0 ? tagger::Tag::kBegin : tagger::Tag::kInside);
      }
    }
    subtitle::CueList cues;
    for (std::size_t i = 0; i < sentences.size(); ++i) {
      const std::size_t words = word_count(sentences[i]);
      if (words < 7 || words > kMiniCorpusSegmentBudget) {
        throw IntegrityError("mini corpus sentence breaks the one-sentence-per-segment layout: " +
                             sentences[i]);
      }
      const double start = kLeadIn + kCueStride * static_cast<double>(i);
      cues.push_back({sentences[i], {start, start + kCueLength}});
    }
    const double duration = cues.back().span.end_s + kTail;
    const bool vtt = plan.format == subtitle::SubtitleFormat::kWebVtt;
    const fs::path sub_rel = fs::path("subtitles") / (std::string(id) + (vtt ? ".vtt" : ".srt"));
    write_text_file(dir / sub_rel, subtitle::serialize_subtitles(cues, plan.format));

    // Frame features: noise, with dimension 0 raised while a procedure runs.
    const auto n_frames = static_cast<std::size_t>(std::ceil(duration));
    kernel::Tensor frames({n_frames, kMiniCorpusFeatureDim});
    for (std::size_t r = 0; r < n_frames; ++r) {
      for (std::size_t c = 0; c < kMiniCorpusFeatureDim; ++c) {
        frames(r, c) = static_cast<double>(static_cast<float>(0.5 * rng.normal()));
      }
    }
    for (const auto& [first, p] : answers) {
      const double a = cues[first].span.start_s;
      const double b = cues[first + 2].span.end_s;
      for (auto r = static_cast<std::size_t>(std::floor(a));
           r < std::min(n_frames, static_cast<std::size_t>(std::ceil(b))); ++r) {
        frames(r, 0) += 2.0;
      }
    }
    const fs::path feat_rel = fs::path("features") / (std::string(id) + ".vftr");
    localizer::save_feature_track(dir / feat_rel, localizer::make_track(std::move(frames), duration));

    VideoRecord rec{id, sub_rel, feat_rel, duration, plan.category};
    manifest.push_back(rec.to_json());

    // Annotations follow the exact segmentation the pipeline will compute.
    const subtitle::WordTimeline timeline = subtitle::build_word_timeline(cues);
    const auto segments = subtitle::align_timestamps(
        subtitle::topic_segment(timeline, subtitle::PunctuationSegmenter(kMiniCorpusSegmentBudget)),
        timeline);
    if (segments.size() != sentences.size()) {
      throw IntegrityError("mini corpus segmentation does not match its cues");
    }
    nlohmann::json tag_names = nlohmann::json::array();
    nlohmann::json seg_texts = nlohmann::json::array();
    for (std::size_t i = 0; i < segments.size(); ++i) {
      seg_texts.push_back(segments[i].text);
      tag_names.push_back(std::string(tagger::tag_name(tags[i])));
    }
    tagging += nlohmann::json({{"video_id", id}, {"segments", seg_texts}, {"tags", tag_names}})
                   .dump() +
               "\n";
    for (std::size_t a = 0; a < answers.size(); ++a) {
      const auto& [first, p] = answers[a];
      const TimeSpan span{segments[first].span.start_s, segments[first + 2].span.end_s};
      const std::string window = text::join(text::tokenize(text::join(qg::answer_window(timeline, span))));
      questions += nlohmann::json({{"video_id", id},
                                   {"window", window},
                                   {"question", kProcedures[p].question}})
                       .dump() +
                   "\n";
      localization += nlohmann::json({{"video_id", id},
                                      {"question_id", std::string(id) + "_q" + std::to_string(a)},
                                      {"question", kProcedures[p].question},
                                      {"answer_start_s", span.start_s},
                                      {"answer_end_s", span.end_s}})
                          .dump() +
                      "\n";
      ++info.answers;
    }
    ++info.videos;
  }

  // Ten documents per category, four sentences each.
  std::vector<std::string> steps;
  for (const Procedure& p : kProcedures) {
    for (const char* s : p.steps) steps.emplace_back(s);
  }
  kernel::Rng doc_rng(kernel::derive_seed(seed, 1000));
  std::string classifier;
  for (std::size_t i = 0; i < 10; ++i) {
    classifier += nlohmann::json({{"text", pick_doc(doc_rng, steps, 4)},
                                  {"label", kMedicalInstructional}})
                      .dump() +
                  "\n";
    classifier += nlohmann::json({{"text", pick_doc(doc_rng, news, 4)},
                                  {"label", kMedicalNonInstructional}})
                      .dump() +
                  "\n";
    classifier +=
        nlohmann::json({{"text", pick_doc(doc_rng, travel, 4)}, {"label", kNonMedical}}).dump() +
        "\n";
  }

  write_text_file(dir / "manifest.json", manifest.dump(2) + "\n");
  write_text_file(dir / "annotations" / "tagging.jsonl", tagging);
  write_text_file(dir / "annotations" / "questions.jsonl", questions);
  write_text_file(dir / "annotations" / "localization.jsonl", localization);
  write_text_file(dir / "annotations" / "classifier.jsonl", classifier);
  write_text_file(dir / "corpus.json",
                  nlohmann::json({{"seed", seed},
                                  {"segment_budget", kMiniCorpusSegmentBudget},
                                  {"feature_dim", kMiniCorpusFeatureDim},
                                  {"videos", info.videos},
                                  {"answers", info.answers}})
                          .dump(2) +
                      "\n");
  return info;
}

}  // namespace vlf::pipeline
