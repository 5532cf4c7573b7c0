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

#include "vlf/tagger/crf.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "vlf/errors.hpp"
#include "vlf/kernel/layers.hpp"

namespace vlf::tagger {

namespace {

constexpr std::size_t C = kNumTags;

void check_shapes(const Tensor& l, const Tensor& m) {
  if (l.rank() != 2 || l.cols() != C || l.rows() == 0) {
    throw DimensionError("CRF emissions must be [k x 3], got " + l.shape_string());
  }
  if (m.rank() != 2 || m.rows() != C || m.cols() != C) {
    throw DimensionError("CRF transitions must be [3 x 3], got " + m.shape_string());
  }
  if (!l.all_finite() || !m.all_finite()) {
    throw NumericError("CRF scores contain non-finite values");
  }
}

double lse3(const std::array<double, C>& v) { return kernel::log_sum_exp(v); }

// alpha(i, t): log-sum over prefixes ending at position i in tag t.
Tensor forward_table(const Tensor& l, const Tensor& m) {
  const std::size_t k = l.rows();
  Tensor alpha({k, C});
  for (std::size_t t = 0; t < C; ++t) alpha(0, t) = l(0, t);
  for (std::size_t i = 1; i < k; ++i) {
    for (std::size_t t = 0; t < C; ++t) {
      std::array<double, C> terms;
      for (std::size_t s = 0; s < C; ++s) terms[s] = alpha(i - 1, s) + m(s, t);
      alpha(i, t) = lse3(terms) + l(i, t);
    }
  }
  return alpha;
}

// beta(i, t): log-sum over suffixes after position i given tag t there.
Tensor backward_table(const Tensor& l, const Tensor& m) {
  const std::size_t k = l.rows();
  Tensor beta({k, C});
  for (std::size_t i = k - 1; i-- > 0;) {
    for (std::size_t s = 0; s < C; ++s) {
      std::array<double, C> terms;
      for (std::size_t t = 0; t < C; ++t) terms[t] = m(s, t) + l(i + 1, t) + beta(i + 1, t);
      beta(i, s) = lse3(terms);
    }
  }
  return beta;
}

double final_lse(const Tensor& alpha) {
  const std::size_t k = alpha.rows();
  return lse3({alpha(k - 1, 0), alpha(k - 1, 1), alpha(k - 1, 2)});
}

}  // namespace

double crf_score(const Tensor& l, const Tensor& m, const TagSequence& y) {
  check_shapes(l, m);
  if (y.size() != l.rows()) {
    throw DimensionError("tag sequence length " + std::to_string(y.size()) +
                         " differs from " + std::to_string(l.rows()) + " emission rows");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const std::size_t t = tag_index(y[i]);
    if (t >= C) throw IndexError("tag index " + std::to_string(t) + " outside alphabet");
    s += l(i, t);
  }
  for (std::size_t i = 1; i < y.size(); ++i) s += m(tag_index(y[i - 1]), tag_index(y[i]));
  return s;
}

double crf_log_partition(const Tensor& l, const Tensor& m) {
  check_shapes(l, m);
  const double z = final_lse(forward_table(l, m));
  if (!std::isfinite(z)) throw NumericError("CRF log partition is not finite");
  return z;
}

CrfMarginals crf_marginals(const Tensor& l, const Tensor& m) {
  check_shapes(l, m);
  const std::size_t k = l.rows();
  const Tensor alpha = forward_table(l, m);
  const Tensor beta = backward_table(l, m);
  CrfMarginals out;
  out.log_partition = final_lse(alpha);
  if (!std::isfinite(out.log_partition)) throw NumericError("CRF log partition is not finite");
  out.unary = Tensor({k, C});
  out.pairwise = Tensor({C, C});
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t t = 0; t < C; ++t) {
      out.unary(i, t) = std::exp(alpha(i, t) + beta(i, t) - out.log_partition);
    }
  }
  for (std::size_t i = 1; i < k; ++i) {
    for (std::size_t s = 0; s < C; ++s) {
      for (std::size_t t = 0; t < C; ++t) {
        out.pairwise(s, t) += std::exp(alpha(i - 1, s) + m(s, t) + l(i, t) + beta(i, t) -
                                       out.log_partition);
      }
    }
  }
  return out;
}

CrfNllGrad crf_nll_grad(const Tensor& l, const Tensor& m, const TagSequence& y) {
  const double gold = crf_score(l, m, y);
  CrfMarginals marg = crf_marginals(l, m);
  CrfNllGrad out;
  out.loss = std::max(0.0, marg.log_partition - gold);
  out.grad_l = std::move(marg.unary);
  out.grad_m = std::move(marg.pairwise);
  for (std::size_t i = 0; i < y.size(); ++i) out.grad_l(i, tag_index(y[i])) -= 1.0;
  for (std::size_t i = 1; i < y.size(); ++i) {
    out.grad_m(tag_index(y[i - 1]), tag_index(y[i])) -= 1.0;
  }
  return out;
}

ViterbiResult viterbi(const Tensor& l, const Tensor& m) {
  check_shapes(l, m);
  const std::size_t k = l.rows();
  Tensor delta({k, C});
  std::vector<std::array<std::size_t, C>> back(k);
  for (std::size_t t = 0; t < C; ++t) delta(0, t) = l(0, t);
  for (std::size_t i = 1; i < k; ++i) {
    for (std::size_t t = 0; t < C; ++t) {
      std::size_t best = 0;
      double best_v = delta(i - 1, 0) + m(0, t);
      for (std::size_t s = 1; s < C; ++s) {
        const double v = delta(i - 1, s) + m(s, t);
        if (v > best_v) {
          best_v = v;
          best = s;
        }
      }
      back[i][t] = best;
      delta(i, t) = best_v + l(i, t);
    }
  }
  std::size_t last = 0;
  for (std::size_t t = 1; t < C; ++t) {
    if (delta(k - 1, t) > delta(k - 1, last)) last = t;
  }
  ViterbiResult out;
  out.tags.resize(k);
  out.tags[k - 1] = tag_from_index(last);
  for (std::size_t i = k - 1; i > 0; --i) {
    last = back[i][last];
    out.tags[i - 1] = tag_from_index(last);
  }
  out.score = crf_score(l, m, out.tags);
  return out;
}

}  // namespace vlf::tagger
