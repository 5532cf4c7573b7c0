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

#ifndef VLF_TESTS_SUPPORT_PIPELINE_FIXTURE_HPP_
#define VLF_TESTS_SUPPORT_PIPELINE_FIXTURE_HPP_

#include <atomic>
#include <filesystem>
#include <functional>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

#include <unistd.h>

#include "vlf/pipeline/dataset.hpp"
#include "vlf/pipeline/records.hpp"
#include "vlf/subtitle/cues.hpp"

namespace vlf::testing {

// Fresh directory under the system temp dir, removed on destruction.
class ScratchDir {
 public:
  explicit ScratchDir(const std::string& tag) {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("vlf_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~ScratchDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  ScratchDir(const ScratchDir&) = delete;
  ScratchDir& operator=(const ScratchDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

// Writes `cues` as an SRT file and returns a record pointing at it.
inline pipeline::VideoRecord write_video(const std::filesystem::path& dir, const std::string& id,
                                         const subtitle::CueList& cues, double duration_s,
                                         const std::string& category =
                                             pipeline::kMedicalInstructional) {
  const auto path = dir / (id + ".srt");
  pipeline::write_text_file(path, subtitle::serialize_subtitles(cues, subtitle::SubtitleFormat::kSrt));
  pipeline::VideoRecord v;
  v.video_id = id;
  v.subtitle_path = path;
  v.duration_s = duration_s;
  v.category = category;
  return v;
}

// Tags chosen by a callback over the segment texts.
class ScriptedTagger : public pipeline::SegmentTagger {
 public:
  using Fn = std::function<tagger::TagSequence(const std::vector<std::string>&)>;
  explicit ScriptedTagger(Fn fn) : fn_(std::move(fn)) {}
  tagger::TagSequence tag(const std::vector<std::string>& segment_texts) const override {
    return fn_(segment_texts);
  }
  pipeline::Provenance provenance() const override { return {"crf", std::nullopt}; }

 private:
  Fn fn_;
};

// Question chosen by a callback over the answer window.
class ScriptedQuestions : public pipeline::QuestionGenerator {
 public:
  using Fn = std::function<std::string(const text::Tokens&)>;
  explicit ScriptedQuestions(Fn fn) : fn_(std::move(fn)) {}
  std::string question(const text::Tokens& window) const override { return fn_(window); }

 private:
  Fn fn_;
};

inline std::string words(std::size_t n) {
  std::string out;
  for (std::size_t i = 0; i < n; ++i) out += (i == 0 ? "" : " ") + std::string("word");
  return out;
}

}  // namespace vlf::testing

#endif  // VLF_TESTS_SUPPORT_PIPELINE_FIXTURE_HPP_
