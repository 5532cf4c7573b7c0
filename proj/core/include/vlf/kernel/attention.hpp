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

#ifndef VLF_KERNEL_ATTENTION_HPP_
#define VLF_KERNEL_ATTENTION_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "vlf/kernel/layers.hpp"
#include "vlf/kernel/param_set.hpp"
#include "vlf/kernel/tensor.hpp"

namespace vlf::kernel {

// Multi-head scaled dot-product attention of `query` rows over `memory`
// rows. Parameters: <prefix>q.{w,b}, k.{w,b}, v.{w,b}, o.{w,b}.
struct MultiHeadCache {
  Tensor query;
  Tensor memory;
  Tensor q, k, v;
  std::vector<Tensor> probs;  // one [nq x nk] matrix per head
  Tensor context;             // concatenated head outputs, [nq x d]
  std::size_t heads = 1;
  bool causal = false;
};

Tensor multi_head_attention(const Tensor& query, const Tensor& memory,
                            const ParamSet& params, const std::string& prefix,
                            std::size_t heads, bool causal,
                            MultiHeadCache* cache);

struct MultiHeadGrads {
  Tensor d_query;
  Tensor d_memory;
};
MultiHeadGrads multi_head_attention_backward(const MultiHeadCache& cache,
                                             const Tensor& dy, ParamSet& params,
                                             const std::string& prefix);

void init_multi_head_attention(ParamSet& params, const std::string& prefix,
                               std::size_t d, Rng& rng);

// Pre-norm transformer encoder layer:
//   x1 = x + MHA(LN1(x)),  y = x1 + FFN(LN2(x1)).
// Contains no positional signal, so it is permutation-equivariant over rows.
struct AttentionLayerCache {
  LayerNormCache ln1;
  MultiHeadCache attn;
  LayerNormCache ln2;
  FeedForwardCache ffn;
};

Tensor attention_layer(const Tensor& x, const ParamSet& params,
                       const std::string& prefix, std::size_t heads,
                       AttentionLayerCache* cache = nullptr);
Tensor attention_layer_backward(const AttentionLayerCache& cache,
                                const Tensor& dy, ParamSet& params,
                                const std::string& prefix);
// ffn_hidden == 0 means 4 * d.
void init_attention_layer(ParamSet& params, const std::string& prefix,
                          std::size_t d, std::size_t heads, Rng& rng,
                          std::size_t ffn_hidden = 0);

// Pre-norm decoder layer: causal self-attention, cross-attention over the
// encoder memory, feed-forward; each with a residual connection.
struct DecoderLayerCache {
  LayerNormCache ln1;
  MultiHeadCache self_attn;
  LayerNormCache ln2;
  MultiHeadCache cross_attn;
  LayerNormCache ln3;
  FeedForwardCache ffn;
};

Tensor decoder_layer(const Tensor& y, const Tensor& memory,
                     const ParamSet& params, const std::string& prefix,
                     std::size_t heads, DecoderLayerCache* cache = nullptr);

struct DecoderLayerGrads {
  Tensor d_input;
  Tensor d_memory;
};
DecoderLayerGrads decoder_layer_backward(const DecoderLayerCache& cache,
                                         const Tensor& dy, ParamSet& params,
                                         const std::string& prefix);
void init_decoder_layer(ParamSet& params, const std::string& prefix,
                        std::size_t d, std::size_t heads, Rng& rng,
                        std::size_t ffn_hidden = 0);

}  // namespace vlf::kernel

#endif  // VLF_KERNEL_ATTENTION_HPP_
