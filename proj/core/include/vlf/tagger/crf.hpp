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

#ifndef VLF_TAGGER_CRF_HPP_
#define VLF_TAGGER_CRF_HPP_

#include "vlf/kernel/tensor.hpp"
#include "vlf/tagger/tags.hpp"

namespace vlf::tagger {

using kernel::Tensor;

// Linear-chain CRF over the three segment tags. Emissions l are [k x 3],
// transitions M are [3 x 3] with M(from, to). A path score is the sum of
// its emissions plus the transitions between consecutive tags; there are no
// start or stop terms.

// Throws IndexError for tags outside the alphabet and DimensionError when
// |y| differs from the emission row count.
double crf_score(const Tensor& l, const Tensor& m, const TagSequence& y);

// log sum over all paths of exp(score). Throws NumericError for non-finite
// inputs.
double crf_log_partition(const Tensor& l, const Tensor& m);

struct CrfMarginals {
  double log_partition = 0.0;
  Tensor unary;     // [k x 3], P(y_i = t)
  Tensor pairwise;  // [3 x 3], expected transition counts over the chain
};

CrfMarginals crf_marginals(const Tensor& l, const Tensor& m);

struct CrfNllGrad {
  double loss = 0.0;  // log partition minus gold score, clamped at 0
  Tensor grad_l;      // [k x 3]
  Tensor grad_m;      // [3 x 3]
};

CrfNllGrad crf_nll_grad(const Tensor& l, const Tensor& m, const TagSequence& y);

struct ViterbiResult {
  TagSequence tags;
  double score = 0.0;
};

// Exact best path. Among equal-scoring paths the one with the lowest tag at
// the latest position where they differ wins.
ViterbiResult viterbi(const Tensor& l, const Tensor& m);

}  // namespace vlf::tagger

#endif  // VLF_TAGGER_CRF_HPP_
