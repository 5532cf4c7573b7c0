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

#include "vlf/metrics/temporal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "vlf/errors.hpp"

namespace vlf::metrics {

namespace {

void require_valid(const TimeSpan& s, const char* what) {
  if (!s.valid()) throw InputError(std::string("invalid ") + what + " span " + to_string(s));
}

std::string percent_key(const char* prefix, double mu) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%s%g", prefix, mu);
  return buf;
}

double f1_of(double p, double r) { return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0; }

BoundaryScores finish(std::size_t matched, std::size_t predicted, std::size_t gold) {
  BoundaryScores s;
  s.matched = matched;
  s.predicted = predicted;
  s.gold = gold;
  if (predicted == 0 && gold == 0) {
    s.precision = s.recall = s.f1 = 1.0;
    return s;
  }
  s.precision = predicted ? static_cast<double>(matched) / static_cast<double>(predicted) : 0.0;
  s.recall = gold ? static_cast<double>(matched) / static_cast<double>(gold) : 0.0;
  s.f1 = f1_of(s.precision, s.recall);
  return s;
}

std::vector<std::size_t> boundaries(const tagger::TagSequence& tags) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < tags.size(); ++i) {
    if (tags[i] == tagger::Tag::kBegin) out.push_back(i);
  }
  return out;
}

}  // namespace

double iou(const TimeSpan& pred, const TimeSpan& gold) {
  require_valid(pred, "predicted");
  require_valid(gold, "gold");
  const double inter =
      std::max(0.0, std::min(pred.end_s, gold.end_s) - std::max(pred.start_s, gold.start_s));
  const double uni = pred.duration() + gold.duration() - inter;
  if (uni <= 0.0) return pred == gold ? 1.0 : 0.0;
  return std::clamp(inter / uni, 0.0, 1.0);
}

double r_at_1(const std::vector<SpanPair>& pairs, double mu) {
  if (!(mu > 0.0 && mu < 1.0)) throw ConfigError("IoU threshold must lie in (0, 1)");
  if (pairs.empty()) throw InputError("R@1 needs at least one prediction");
  std::size_t hits = 0;
  for (const auto& [p, g] : pairs) {
    if (iou(p, g) > mu) ++hits;
  }
  return 100.0 * static_cast<double>(hits) / static_cast<double>(pairs.size());
}

double miou(const std::vector<SpanPair>& pairs) {
  if (pairs.empty()) throw InputError("mIoU needs at least one prediction");
  double total = 0.0;
  for (const auto& [p, g] : pairs) total += iou(p, g);
  return total / static_cast<double>(pairs.size());
}

EvalReport localization_report(const std::vector<SpanPair>& pairs,
                               const std::vector<double>& mus) {
  EvalReport r;
  r.name = "localization";
  r.config["mu"] = mus;
  for (double mu : mus) r.values[percent_key("R@1 IoU=", mu)] = r_at_1(pairs, mu);
  r.values["mIoU"] = 100.0 * miou(pairs);
  for (const auto& [p, g] : pairs) {
    r.items.push_back({{"pred", {p.start_s, p.end_s}}, {"gold", {g.start_s, g.end_s}},
                       {"iou", iou(p, g)}});
  }
  return r;
}

BoundaryScores windowed_f1(const tagger::TagSequence& pred, const tagger::TagSequence& gold,
                           std::size_t w, WindowSemantics semantics) {
  if (pred.size() != gold.size()) {
    throw InputError("windowed F1 needs equal-length tag sequences (" +
                     std::to_string(pred.size()) + " vs " + std::to_string(gold.size()) + ")");
  }
  if (w == 0) throw ConfigError("window w must be at least 1");
  const std::size_t radius = semantics == WindowSemantics::kRadiusWMinusOne ? w - 1 : w;
  const std::vector<std::size_t> p = boundaries(pred);
  const std::vector<std::size_t> g = boundaries(gold);
  // Both lists are sorted, so the leftmost unconsumed gold candidate only
  // moves right.
  std::size_t next = 0;
  std::size_t matched = 0;
  for (std::size_t i : p) {
    while (next < g.size() && g[next] + radius < i) ++next;
    if (next < g.size() && g[next] <= i + radius) {
      ++matched;
      ++next;
    }
  }
  return finish(matched, p.size(), g.size());
}

EvalReport segmentation_report(const std::vector<TagPair>& pairs,
                               const std::vector<std::size_t>& windows,
                               WindowSemantics semantics) {
  if (pairs.empty()) throw InputError("segmentation report needs at least one sequence");
  EvalReport r;
  r.name = "segmentation";
  r.config["windows"] = windows;
  r.config["radius"] = semantics == WindowSemantics::kRadiusWMinusOne ? "w-1" : "w";
  for (std::size_t w : windows) {
    std::size_t m = 0, np = 0, ng = 0;
    for (const auto& [p, g] : pairs) {
      BoundaryScores s = windowed_f1(p, g, w, semantics);
      m += s.matched;
      np += s.predicted;
      ng += s.gold;
    }
    const BoundaryScores total = finish(m, np, ng);
    const std::string suffix = "(w=" + std::to_string(w) + ")";
    r.values["F1 " + suffix] = total.f1;
    r.values["P " + suffix] = total.precision;
    r.values["R " + suffix] = total.recall;
  }
  return r;
}

}  // namespace vlf::metrics
