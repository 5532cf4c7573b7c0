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

#include "vlf/subtitle/time_span.hpp"

#include <cmath>
#include <cstdio>

#include "vlf/errors.hpp"

namespace vlf::subtitle {

bool TimeSpan::valid() const {
  return std::isfinite(start_s) && std::isfinite(end_s) && start_s >= 0.0 &&
         start_s <= end_s;
}

TimeSpan make_span(double start_s, double end_s) {
  TimeSpan s{start_s, end_s};
  if (!s.valid()) throw InputError("invalid time span " + to_string(s));
  return s;
}

std::string to_string(const TimeSpan& span) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "(%.3f, %.3f)", span.start_s, span.end_s);
  return buf;
}

}  // namespace vlf::subtitle
