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

#include "vlf/metrics/text_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>

#include "vlf/errors.hpp"

namespace vlf::metrics {

namespace {

using NgramCounts = std::map<Tokens, std::size_t>;

NgramCounts ngrams(const Tokens& tokens, std::size_t n) {
  NgramCounts out;
  if (tokens.size() < n) return out;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++out[Tokens(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                 tokens.begin() + static_cast<std::ptrdiff_t>(i + n))];
  }
  return out;
}

std::size_t total(const NgramCounts& c) {
  std::size_t t = 0;
  for (const auto& [g, k] : c) t += k;
  return t;
}

Prf make_prf(double p, double r) {
  return {p, r, p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0};
}

std::size_t lcs_length(const Tokens& a, const Tokens& b) {
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

}  // namespace

double bleu(const Tokens& candidate, const std::vector<Tokens>& references, int n) {
  if (n < 1 || n > 4) throw ConfigError("BLEU order must be in 1..4");
  if (references.empty()) throw InputError("BLEU needs at least one reference");
  if (candidate.empty()) return 0.0;
  double log_sum = 0.0;
  for (int k = 1; k <= n; ++k) {
    const auto order = static_cast<std::size_t>(k);
    const NgramCounts cand = ngrams(candidate, order);
    NgramCounts max_ref;
    for (const Tokens& ref : references) {
      for (const auto& [g, c] : ngrams(ref, order)) max_ref[g] = std::max(max_ref[g], c);
    }
    std::size_t matched = 0;
    for (const auto& [g, c] : cand) {
      auto it = max_ref.find(g);
      if (it != max_ref.end()) matched += std::min(c, it->second);
    }
    const std::size_t count = total(cand);
    double p;
    if (matched > 0) {
      p = static_cast<double>(matched) / static_cast<double>(count);
    } else if (k == 1) {
      return 0.0;
    } else {
      p = 1.0 / static_cast<double>(count + 1);
    }
    log_sum += std::log(p);
  }
  const auto c = static_cast<long>(candidate.size());
  long closest = static_cast<long>(references.front().size());
  for (const Tokens& ref : references) {
    const auto r = static_cast<long>(ref.size());
    if (std::labs(r - c) < std::labs(closest - c) ||
        (std::labs(r - c) == std::labs(closest - c) && r < closest)) {
      closest = r;
    }
  }
  const double bp =
      c >= closest ? 1.0 : std::exp(1.0 - static_cast<double>(closest) / static_cast<double>(c));
  return bp * std::exp(log_sum / static_cast<double>(n));
}

Prf rouge(const Tokens& candidate, const Tokens& reference, RougeVariant variant) {
  if (reference.empty()) throw InputError("ROUGE needs a non-empty reference");
  if (variant == RougeVariant::kRougeL) {
    if (candidate.empty()) return {};
    const auto l = static_cast<double>(lcs_length(candidate, reference));
    return make_prf(l / static_cast<double>(candidate.size()),
                    l / static_cast<double>(reference.size()));
  }
  const std::size_t n = variant == RougeVariant::kRouge1 ? 1 : 2;
  const NgramCounts cand = ngrams(candidate, n);
  const NgramCounts ref = ngrams(reference, n);
  const std::size_t nc = total(cand);
  const std::size_t nr = total(ref);
  if (nc == 0 && nr == 0) return candidate == reference ? Prf{1.0, 1.0, 1.0} : Prf{};
  if (nc == 0 || nr == 0) return {};
  std::size_t overlap = 0;
  for (const auto& [g, c] : cand) {
    auto it = ref.find(g);
    if (it != ref.end()) overlap += std::min(c, it->second);
  }
  return make_prf(static_cast<double>(overlap) / static_cast<double>(nc),
                  static_cast<double>(overlap) / static_cast<double>(nr));
}

double cls_f1(const std::vector<std::string>& preds, const std::vector<std::string>& golds,
              const std::string& positive) {
  if (preds.size() != golds.size()) throw InputError("cls_f1 needs equal-length label lists");
  std::size_t tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    const bool p = preds[i] == positive;
    const bool g = golds[i] == positive;
    tp += p && g;
    fp += p && !g;
    fn += !p && g;
  }
  if (tp + fp + fn == 0) return 1.0;
  return 2.0 * static_cast<double>(tp) / static_cast<double>(2 * tp + fp + fn);
}

EvalReport generation_report(const std::vector<std::pair<Tokens, Tokens>>& pairs) {
  if (pairs.empty()) throw InputError("generation report needs at least one pair");
  EvalReport r;
  r.name = "generation";
  double b[4] = {0, 0, 0, 0};
  double rg[3] = {0, 0, 0};
  const RougeVariant variants[3] = {RougeVariant::kRouge1, RougeVariant::kRouge2,
                                    RougeVariant::kRougeL};
  for (const auto& [cand, ref] : pairs) {
    nlohmann::json item = {{"candidate", text::join(cand)}, {"reference", text::join(ref)}};
    for (int k = 0; k < 4; ++k) {
      const double v = bleu(cand, {ref}, k + 1);
      b[k] += v;
      item["BLEU-" + std::to_string(k + 1)] = v;
    }
    for (int k = 0; k < 3; ++k) {
      const double v = rouge(cand, ref, variants[k]).f1;
      rg[k] += v;
    }
    r.items.push_back(std::move(item));
  }
  const double n = static_cast<double>(pairs.size());
  for (int k = 0; k < 4; ++k) r.values["BLEU-" + std::to_string(k + 1)] = 100.0 * b[k] / n;
  r.values["ROUGE-1"] = 100.0 * rg[0] / n;
  r.values["ROUGE-2"] = 100.0 * rg[1] / n;
  r.values["ROUGE-L"] = 100.0 * rg[2] / n;
  return r;
}

}  // namespace vlf::metrics
