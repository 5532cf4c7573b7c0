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

#ifndef VLF_METRICS_TEXT_METRICS_HPP_
#define VLF_METRICS_TEXT_METRICS_HPP_

#include <string>
#include <vector>

#include "vlf/metrics/report.hpp"
#include "vlf/text/tokenizer.hpp"

namespace vlf::metrics {

using text::Tokens;

// Corpus-free sentence BLEU with n-gram orders 1..n (n in 1..4), clipped
// counts against the per-n-gram maximum over references, and a brevity
// penalty against the closest reference length (shorter wins ties). A zero
// match count at order >= 2 is smoothed to 1 / (candidates + 1).
double bleu(const Tokens& candidate, const std::vector<Tokens>& references, int n);

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

enum class RougeVariant { kRouge1, kRouge2, kRougeL };

// Two sides with no units of the requested kind score 1 when the token
// sequences are equal and 0 otherwise.
Prf rouge(const Tokens& candidate, const Tokens& reference, RougeVariant variant);

// Binary F1 for `positive`. All-negative agreement scores 1.
double cls_f1(const std::vector<std::string>& preds, const std::vector<std::string>& golds,
              const std::string& positive);

// Mean BLEU-1..4 and ROUGE-1/2/L F1 over (candidate, reference) pairs, in
// percent.
EvalReport generation_report(const std::vector<std::pair<Tokens, Tokens>>& pairs);

}  // namespace vlf::metrics

#endif  // VLF_METRICS_TEXT_METRICS_HPP_
