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

#ifndef VLF_TAGGER_ENCODER_HPP_
#define VLF_TAGGER_ENCODER_HPP_

#include <cstddef>
#include <optional>
#include <string>

#include "vlf/kernel/param_set.hpp"
#include "vlf/kernel/rng.hpp"
#include "vlf/kernel/tensor.hpp"
#include "vlf/text/tokenizer.hpp"

namespace vlf::tagger {

using kernel::ParamSet;
using kernel::Tensor;

// Maps a token sequence to a single d-dimensional state. Implementations
// keep their trainable weights in the caller's ParamSet so that a model
// owns exactly one parameter store. Outputs are [1 x dim()].
class SegmentEncoder {
 public:
  virtual ~SegmentEncoder() = default;

  virtual std::size_t dim() const = 0;
  virtual std::size_t max_tokens() const = 0;

  // State summarising the whole sequence.
  virtual Tensor encode(const text::Tokens& tokens, const ParamSet& params) const = 0;

  // State at `mask_pos` of a prompt sequence.
  virtual Tensor encode_masked(const text::Tokens& tokens, std::size_t mask_pos,
                               const ParamSet& params) const = 0;

  // Accumulates parameter gradients for an upstream gradient on the output
  // of encode (mask_pos empty) or encode_masked. Frozen encoders keep the
  // default no-op.
  virtual void backward(const text::Tokens& tokens, std::optional<std::size_t> mask_pos,
                        const Tensor& d_out, ParamSet& params) const {
    (void)tokens;
    (void)mask_pos;
    (void)d_out;
    (void)params;
  }

  virtual void init_params(ParamSet& params, kernel::Rng& rng) const {
    (void)params;
    (void)rng;
  }
};

// Hashed word embeddings feeding a tanh recurrence. The recurrence starts
// from the mean embedding of the sequence, so every step sees the whole
// input; the final state (or the state right after the mask token) is the
// output. Sequences are truncated to max_tokens; an empty sequence encodes
// as a single padding token. Parameters: enc.emb [buckets x d], enc.wx,
// enc.wh [d x d], enc.b [d].
class ToyEncoder : public SegmentEncoder {
 public:
  ToyEncoder(std::size_t dim, std::size_t buckets = 2048, std::size_t max_tokens = 128);

  std::size_t dim() const override { return dim_; }
  std::size_t max_tokens() const override { return max_tokens_; }
  std::size_t buckets() const { return buckets_; }

  Tensor encode(const text::Tokens& tokens, const ParamSet& params) const override;
  Tensor encode_masked(const text::Tokens& tokens, std::size_t mask_pos,
                       const ParamSet& params) const override;
  void backward(const text::Tokens& tokens, std::optional<std::size_t> mask_pos,
                const Tensor& d_out, ParamSet& params) const override;
  void init_params(ParamSet& params, kernel::Rng& rng) const override;

  std::size_t bucket_of(const std::string& token) const;

 private:
  struct Trace;
  Trace run(const text::Tokens& tokens, std::optional<std::size_t> mask_pos,
            const ParamSet& params) const;

  std::size_t dim_;
  std::size_t buckets_;
  std::size_t max_tokens_;
};

}  // namespace vlf::tagger

#endif  // VLF_TAGGER_ENCODER_HPP_
