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

#include "vlf/kernel/attention.hpp"

#include <cmath>
#include <limits>

#include "vlf/errors.hpp"

namespace vlf::kernel {

namespace {

void check_heads(std::size_t d, std::size_t heads) {
  if (heads == 0 || d % heads != 0) {
    throw ConfigError("attention: model dimension " + std::to_string(d) +
                      " is not divisible by " + std::to_string(heads) +
                      " heads");
  }
}

}  // namespace

Tensor multi_head_attention(const Tensor& query, const Tensor& memory,
                            const ParamSet& params, const std::string& prefix,
                            std::size_t heads, bool causal,
                            MultiHeadCache* cache) {
  const std::size_t d = query.cols();
  check_heads(d, heads);
  if (memory.cols() != d) {
    throw DimensionError("attention: query " + query.shape_string() +
                         " and memory " + memory.shape_string() +
                         " widths differ");
  }
  const std::size_t nq = query.rows(), nk = memory.rows();
  const std::size_t dh = d / heads;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));

  Tensor q = affine(query, params, prefix + "q.");
  Tensor k = affine(memory, params, prefix + "k.");
  Tensor v = affine(memory, params, prefix + "v.");
  Tensor context({nq, d});
  std::vector<Tensor> probs;
  probs.reserve(heads);

  std::vector<double> scores(nk);
  for (std::size_t h = 0; h < heads; ++h) {
    const std::size_t off = h * dh;
    Tensor p({nq, nk});
    for (std::size_t i = 0; i < nq; ++i) {
      const std::size_t visible = causal ? std::min(i + 1, nk) : nk;
      for (std::size_t j = 0; j < nk; ++j) {
        if (j >= visible) {
          scores[j] = -std::numeric_limits<double>::infinity();
          continue;
        }
        double s = 0.0;
        for (std::size_t c = 0; c < dh; ++c) s += q(i, off + c) * k(j, off + c);
        scores[j] = s * scale;
      }
      std::vector<double> row = softmax(scores);
      for (std::size_t j = 0; j < nk; ++j) p(i, j) = row[j];
      for (std::size_t j = 0; j < visible; ++j) {
        const double w = row[j];
        for (std::size_t c = 0; c < dh; ++c) context(i, off + c) += w * v(j, off + c);
      }
    }
    probs.push_back(std::move(p));
  }

  Tensor out = affine(context, params, prefix + "o.");
  if (cache) {
    cache->query = query;
    cache->memory = memory;
    cache->q = std::move(q);
    cache->k = std::move(k);
    cache->v = std::move(v);
    cache->probs = std::move(probs);
    cache->context = std::move(context);
    cache->heads = heads;
    cache->causal = causal;
  }
  return out;
}

MultiHeadGrads multi_head_attention_backward(const MultiHeadCache& cache,
                                             const Tensor& dy, ParamSet& params,
                                             const std::string& prefix) {
  const std::size_t d = cache.q.cols();
  const std::size_t nq = cache.q.rows(), nk = cache.k.rows();
  const std::size_t dh = d / cache.heads;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));

  Tensor dcontext = affine_backward(cache.context, dy, params, prefix + "o.");
  Tensor dq({nq, d}), dk({nk, d}), dv({nk, d});
  std::vector<double> dp(nk);

  for (std::size_t h = 0; h < cache.heads; ++h) {
    const std::size_t off = h * dh;
    const Tensor& p = cache.probs[h];
    for (std::size_t i = 0; i < nq; ++i) {
      // dP = dO_h V_h^T ; dV_h += P^T dO_h
      double dot = 0.0;
      for (std::size_t j = 0; j < nk; ++j) {
        double s = 0.0;
        for (std::size_t c = 0; c < dh; ++c) {
          s += dcontext(i, off + c) * cache.v(j, off + c);
          dv(j, off + c) += p(i, j) * dcontext(i, off + c);
        }
        dp[j] = s;
        dot += s * p(i, j);
      }
      // Softmax Jacobian: dS = P * (dP - <dP, P>).
      for (std::size_t j = 0; j < nk; ++j) {
        const double ds = p(i, j) * (dp[j] - dot) * scale;
        if (ds == 0.0) continue;
        for (std::size_t c = 0; c < dh; ++c) {
          dq(i, off + c) += ds * cache.k(j, off + c);
          dk(j, off + c) += ds * cache.q(i, off + c);
        }
      }
    }
  }

  MultiHeadGrads g;
  g.d_query = affine_backward(cache.query, dq, params, prefix + "q.");
  g.d_memory = affine_backward(cache.memory, dk, params, prefix + "k.");
  add_inplace(g.d_memory, affine_backward(cache.memory, dv, params, prefix + "v."));
  return g;
}

void init_multi_head_attention(ParamSet& params, const std::string& prefix,
                               std::size_t d, Rng& rng) {
  init_affine(params, prefix + "q.", d, d, rng);
  init_affine(params, prefix + "k.", d, d, rng);
  init_affine(params, prefix + "v.", d, d, rng);
  init_affine(params, prefix + "o.", d, d, rng);
}

Tensor attention_layer(const Tensor& x, const ParamSet& params,
                       const std::string& prefix, std::size_t heads,
                       AttentionLayerCache* cache) {
  check_heads(x.cols(), heads);
  if (x.rank() != 2 || x.rows() == 0) {
    throw DimensionError("attention_layer: expected a non-empty matrix, got " +
                         x.shape_string());
  }
  LayerNormCache ln1, ln2;
  MultiHeadCache attn;
  FeedForwardCache ffn;
  Tensor a = layer_norm(x, params, prefix + "ln1.", cache ? &ln1 : nullptr);
  Tensor x1 = add(x, multi_head_attention(a, a, params, prefix + "attn.", heads,
                                          false, cache ? &attn : nullptr));
  Tensor c = layer_norm(x1, params, prefix + "ln2.", cache ? &ln2 : nullptr);
  Tensor y = add(x1, feed_forward(c, params, prefix + "ffn.", cache ? &ffn : nullptr));
  if (cache) {
    cache->ln1 = std::move(ln1);
    cache->attn = std::move(attn);
    cache->ln2 = std::move(ln2);
    cache->ffn = std::move(ffn);
  }
  return y;
}

Tensor attention_layer_backward(const AttentionLayerCache& cache,
                                const Tensor& dy, ParamSet& params,
                                const std::string& prefix) {
  Tensor dx1 = dy;
  add_inplace(dx1, layer_norm_backward(
                       cache.ln2,
                       feed_forward_backward(cache.ffn, dy, params, prefix + "ffn."),
                       params, prefix + "ln2."));
  MultiHeadGrads ga =
      multi_head_attention_backward(cache.attn, dx1, params, prefix + "attn.");
  add_inplace(ga.d_query, ga.d_memory);
  Tensor dx = dx1;
  add_inplace(dx, layer_norm_backward(cache.ln1, ga.d_query, params, prefix + "ln1."));
  return dx;
}

void init_attention_layer(ParamSet& params, const std::string& prefix,
                          std::size_t d, std::size_t heads, Rng& rng,
                          std::size_t ffn_hidden) {
  check_heads(d, heads);
  init_layer_norm(params, prefix + "ln1.", d);
  init_multi_head_attention(params, prefix + "attn.", d, rng);
  init_layer_norm(params, prefix + "ln2.", d);
  init_feed_forward(params, prefix + "ffn.", d, ffn_hidden ? ffn_hidden : 4 * d, rng);
}

Tensor decoder_layer(const Tensor& y, const Tensor& memory,
                     const ParamSet& params, const std::string& prefix,
                     std::size_t heads, DecoderLayerCache* cache) {
  DecoderLayerCache local;
  DecoderLayerCache* c = cache ? cache : nullptr;
  Tensor a = layer_norm(y, params, prefix + "ln1.", c ? &local.ln1 : nullptr);
  Tensor y1 = add(y, multi_head_attention(a, a, params, prefix + "self.", heads,
                                          true, c ? &local.self_attn : nullptr));
  Tensor b = layer_norm(y1, params, prefix + "ln2.", c ? &local.ln2 : nullptr);
  Tensor y2 = add(y1, multi_head_attention(b, memory, params, prefix + "cross.",
                                           heads, false,
                                           c ? &local.cross_attn : nullptr));
  Tensor e = layer_norm(y2, params, prefix + "ln3.", c ? &local.ln3 : nullptr);
  Tensor out = add(y2, feed_forward(e, params, prefix + "ffn.", c ? &local.ffn : nullptr));
  if (cache) *cache = std::move(local);
  return out;
}

DecoderLayerGrads decoder_layer_backward(const DecoderLayerCache& cache,
                                         const Tensor& dy, ParamSet& params,
                                         const std::string& prefix) {
  Tensor dy2 = dy;
  add_inplace(dy2, layer_norm_backward(
                       cache.ln3,
                       feed_forward_backward(cache.ffn, dy, params, prefix + "ffn."),
                       params, prefix + "ln3."));
  MultiHeadGrads gc = multi_head_attention_backward(cache.cross_attn, dy2, params,
                                                    prefix + "cross.");
  Tensor dy1 = dy2;
  add_inplace(dy1, layer_norm_backward(cache.ln2, gc.d_query, params, prefix + "ln2."));
  MultiHeadGrads gs =
      multi_head_attention_backward(cache.self_attn, dy1, params, prefix + "self.");
  add_inplace(gs.d_query, gs.d_memory);
  DecoderLayerGrads g;
  g.d_input = dy1;
  add_inplace(g.d_input,
              layer_norm_backward(cache.ln1, gs.d_query, params, prefix + "ln1."));
  g.d_memory = std::move(gc.d_memory);
  return g;
}

void init_decoder_layer(ParamSet& params, const std::string& prefix,
                        std::size_t d, std::size_t heads, Rng& rng,
                        std::size_t ffn_hidden) {
  check_heads(d, heads);
  init_layer_norm(params, prefix + "ln1.", d);
  init_multi_head_attention(params, prefix + "self.", d, rng);
  init_layer_norm(params, prefix + "ln2.", d);
  init_multi_head_attention(params, prefix + "cross.", d, rng);
  init_layer_norm(params, prefix + "ln3.", d);
  init_feed_forward(params, prefix + "ffn.", d, ffn_hidden ? ffn_hidden : 4 * d, rng);
}

}  // namespace vlf::kernel
