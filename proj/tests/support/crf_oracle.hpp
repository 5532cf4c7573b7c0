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

#ifndef VLF_TESTS_SUPPORT_CRF_ORACLE_HPP_
#define VLF_TESTS_SUPPORT_CRF_ORACLE_HPP_

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "vlf/kernel/rng.hpp"
#include "vlf/kernel/tensor.hpp"
#include "vlf/tagger/crf.hpp"

namespace vlf::testing {

using kernel::Tensor;
using tagger::Tag;
using tagger::TagSequence;

// Calls fn on every one of the 3^k tag sequences, in lexicographic order
// with position 0 most significant.
inline void for_each_sequence(std::size_t k, const std::function<void(const TagSequence&)>& fn) {
  TagSequence y(k, Tag::kBegin);
  while (true) {
    fn(y);
    std::size_t i = k;
    while (i > 0) {
      --i;
      const std::size_t next = tagger::tag_index(y[i]) + 1;
      if (next < tagger::kNumTags) {
        y[i] = tagger::tag_from_index(next);
        break;
      }
      y[i] = Tag::kBegin;
      if (i == 0) return;
    }
    if (k == 0) return;
  }
}

// Plain per-position sum, independent of the library's crf_score.
inline double path_score(const Tensor& l, const Tensor& m, const TagSequence& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    s += l(i, tagger::tag_index(y[i]));
    if (i > 0) s += m(tagger::tag_index(y[i - 1]), tagger::tag_index(y[i]));
  }
  return s;
}

inline double brute_log_partition(const Tensor& l, const Tensor& m) {
  std::vector<double> scores;
  for_each_sequence(l.rows(), [&](const TagSequence& y) { scores.push_back(path_score(l, m, y)); });
  double mx = -std::numeric_limits<double>::infinity();
  for (double s : scores) mx = std::max(mx, s);
  double sum = 0.0;
  for (double s : scores) sum += std::exp(s - mx);
  return mx + std::log(sum);
}

// Highest-scoring path. Exact ties prefer the lowest tag at the latest
// differing position.
inline TagSequence brute_argmax(const Tensor& l, const Tensor& m) {
  TagSequence best;
  double best_score = -std::numeric_limits<double>::infinity();
  for_each_sequence(l.rows(), [&](const TagSequence& y) {
    const double s = path_score(l, m, y);
    bool better = s > best_score;
    if (!better && s == best_score) {
      for (std::size_t i = y.size(); i-- > 0;) {
        if (y[i] != best[i]) {
          better = tagger::tag_index(y[i]) < tagger::tag_index(best[i]);
          break;
        }
      }
    }
    if (better) {
      best = y;
      best_score = s;
    }
  });
  return best;
}

inline Tensor random_scores(std::size_t rows, std::size_t cols, kernel::Rng& rng, double scale) {
  Tensor t({rows, cols});
  for (double& v : t.values()) v = rng.uniform(-scale, scale);
  return t;
}

}  // namespace vlf::testing

#endif  // VLF_TESTS_SUPPORT_CRF_ORACLE_HPP_
