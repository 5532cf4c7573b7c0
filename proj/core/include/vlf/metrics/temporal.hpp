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

#ifndef VLF_METRICS_TEMPORAL_HPP_
#define VLF_METRICS_TEMPORAL_HPP_

#include <cstddef>
#include <utility>
#include <vector>

#include "vlf/metrics/report.hpp"
#include "vlf/subtitle/time_span.hpp"
#include "vlf/tagger/tags.hpp"

namespace vlf::metrics {

using subtitle::TimeSpan;

// Interval overlap ratio in [0, 1]. Two zero-length spans score 1 when equal
// and 0 otherwise.
double iou(const TimeSpan& pred, const TimeSpan& gold);

// (prediction, gold)
using SpanPair = std::pair<TimeSpan, TimeSpan>;

// Percentage of pairs with iou strictly greater than mu; mu in (0, 1).
double r_at_1(const std::vector<SpanPair>& pairs, double mu);

double miou(const std::vector<SpanPair>& pairs);

// R@1 at each mu (percent), mIoU (percent) and per-pair IoU items.
EvalReport localization_report(const std::vector<SpanPair>& pairs,
                               const std::vector<double>& mus = {0.3, 0.5, 0.7});

// kRadiusWMinusOne treats w = 1 as an exact match; kRadiusW allows |i - j| <= w.
enum class WindowSemantics { kRadiusWMinusOne, kRadiusW };

struct BoundaryScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t matched = 0;
  std::size_t predicted = 0;
  std::size_t gold = 0;
};

// Boundary F1 over B-Seg positions. Predicted boundaries are visited left to
// right and each takes the leftmost unconsumed gold boundary within the
// radius. With no boundaries on either side all three scores are 1.
BoundaryScores windowed_f1(const tagger::TagSequence& pred, const tagger::TagSequence& gold,
                           std::size_t w,
                           WindowSemantics semantics = WindowSemantics::kRadiusWMinusOne);

using TagPair = std::pair<tagger::TagSequence, tagger::TagSequence>;

// Micro-averaged windowed F1 for each w, pooling matched/predicted/gold
// counts over all sequences.
EvalReport segmentation_report(const std::vector<TagPair>& pairs,
                               const std::vector<std::size_t>& windows = {1, 2, 3},
                               WindowSemantics semantics = WindowSemantics::kRadiusWMinusOne);

}  // namespace vlf::metrics

#endif  // VLF_METRICS_TEMPORAL_HPP_
