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

#ifndef VLF_TESTS_SUPPORT_SUBTITLE_FIXTURES_HPP_
#define VLF_TESTS_SUPPORT_SUBTITLE_FIXTURES_HPP_

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace vlf::testing {

struct SubtitleFixture {
  std::string name;
  std::size_t cues;  // after empty cues are dropped
};

// Hand-written files under the fixture directory's subtitles/ folder.
inline const std::vector<SubtitleFixture>& subtitle_fixtures() {
  static const std::vector<SubtitleFixture> files = {
      {"basic.srt", 4},
      {"crlf_bom_markup.srt", 3},
      {"long_running.srt", 3},
      {"auto_captions.vtt", 4},
      {"notes_and_ids.vtt", 3},
  };
  return files;
}

inline std::filesystem::path subtitle_fixture_path(const std::string& name) {
  return std::filesystem::path(VLF_FIXTURE_DIR) / "subtitles" / name;
}

}  // namespace vlf::testing

#endif  // VLF_TESTS_SUPPORT_SUBTITLE_FIXTURES_HPP_
