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

#ifndef VLF_SUBTITLE_TIME_SPAN_HPP_
#define VLF_SUBTITLE_TIME_SPAN_HPP_

#include <string>

namespace vlf::subtitle {

// Closed interval of video time in seconds.
struct TimeSpan {
  double start_s = 0.0;
  double end_s = 0.0;

  double duration() const { return end_s - start_s; }
  bool valid() const;

  friend bool operator==(const TimeSpan&, const TimeSpan&) = default;
};

// Throws InputError unless 0 <= start <= end and both are finite.
TimeSpan make_span(double start_s, double end_s);

std::string to_string(const TimeSpan& span);

}  // namespace vlf::subtitle

#endif  // VLF_SUBTITLE_TIME_SPAN_HPP_
