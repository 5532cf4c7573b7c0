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

#include "vlf/tagger/encoder.hpp"

#include <cmath>

#include "vlf/errors.hpp"
#include "vlf/kernel/layers.hpp"

namespace vlf::tagger {

using kernel::Rng;

namespace {
constexpr std::string_view kEmptyToken = "<pad>";
}  // namespace

struct ToyEncoder::Trace {
  std::vector<std::size_t> ids;
  Tensor emb;     // [T x d]
  Tensor states;  // [(steps + 1) x d]; row 0 is the mean embedding
  std::size_t steps = 0;
};

ToyEncoder::ToyEncoder(std::size_t dim, std::size_t buckets, std::size_t max_tokens)
    : dim_(dim), buckets_(buckets), max_tokens_(max_tokens) {
  if (dim == 0 || buckets == 0 || max_tokens == 0) {
    throw ConfigError("toy encoder needs positive dim, buckets and max_tokens");
  }
}

std::size_t ToyEncoder::bucket_of(const std::string& token) const {
  return static_cast<std::size_t>(text::fnv1a(token) % buckets_);
}

void ToyEncoder::init_params(ParamSet& params, Rng& rng) const {
  params.add("enc.emb", kernel::normal_tensor({buckets_, dim_}, 1.0, rng));
  params.add("enc.wx", kernel::xavier(dim_, dim_, rng));
  params.add("enc.wh", kernel::xavier(dim_, dim_, rng));
  params.add("enc.b", Tensor({dim_}));
}

ToyEncoder::Trace ToyEncoder::run(const text::Tokens& tokens,
                                  std::optional<std::size_t> mask_pos,
                                  const ParamSet& params) const {
  Trace tr;
  const std::size_t n = std::min(tokens.size(), max_tokens_);
  for (std::size_t i = 0; i < n; ++i) tr.ids.push_back(bucket_of(tokens[i]));
  if (tr.ids.empty()) tr.ids.push_back(bucket_of(std::string(kEmptyToken)));
  if (mask_pos && *mask_pos >= tr.ids.size()) {
    throw IndexError("mask position " + std::to_string(*mask_pos) +
                     " outside encoded sequence of " + std::to_string(tr.ids.size()));
  }
  const Tensor& table = params.value("enc.emb");
  const Tensor& wx = params.value("enc.wx");
  const Tensor& wh = params.value("enc.wh");
  const Tensor& b = params.value("enc.b");
  if (table.cols() != dim_ || wx.rows() != dim_) {
    throw DimensionError("encoder parameters do not match dim " + std::to_string(dim_));
  }
  tr.emb = kernel::embed(table, tr.ids);
  const std::size_t t_len = tr.ids.size();
  tr.steps = mask_pos ? *mask_pos + 1 : t_len;
  tr.states = Tensor({tr.steps + 1, dim_});
  for (std::size_t t = 0; t < t_len; ++t) {
    for (std::size_t j = 0; j < dim_; ++j) tr.states(0, j) += tr.emb(t, j) / t_len;
  }
  for (std::size_t t = 1; t <= tr.steps; ++t) {
    for (std::size_t j = 0; j < dim_; ++j) {
      double a = b[j];
      for (std::size_t i = 0; i < dim_; ++i) {
        a += tr.emb(t - 1, i) * wx(i, j) + tr.states(t - 1, i) * wh(i, j);
      }
      tr.states(t, j) = std::tanh(a);
    }
  }
  return tr;
}

Tensor ToyEncoder::encode(const text::Tokens& tokens, const ParamSet& params) const {
  Trace tr = run(tokens, std::nullopt, params);
  Tensor out({1, dim_});
  for (std::size_t j = 0; j < dim_; ++j) out(0, j) = tr.states(tr.steps, j);
  return out;
}

Tensor ToyEncoder::encode_masked(const text::Tokens& tokens, std::size_t mask_pos,
                                 const ParamSet& params) const {
  Trace tr = run(tokens, mask_pos, params);
  Tensor out({1, dim_});
  for (std::size_t j = 0; j < dim_; ++j) out(0, j) = tr.states(tr.steps, j);
  return out;
}

void ToyEncoder::backward(const text::Tokens& tokens, std::optional<std::size_t> mask_pos,
                          const Tensor& d_out, ParamSet& params) const {
  if (d_out.size() != dim_) {
    throw DimensionError("encoder upstream gradient has " + std::to_string(d_out.size()) +
                         " entries, expected " + std::to_string(dim_));
  }
  Trace tr = run(tokens, mask_pos, params);
  const Tensor& wx = params.value("enc.wx");
  const Tensor& wh = params.value("enc.wh");
  Tensor& g_wx = params.grad_mut("enc.wx");
  Tensor& g_wh = params.grad_mut("enc.wh");
  Tensor& g_b = params.grad_mut("enc.b");
  const std::size_t t_len = tr.ids.size();
  Tensor d_emb({t_len, dim_});
  std::vector<double> ds(d_out.data().begin(), d_out.data().end());
  std::vector<double> da(dim_);
  for (std::size_t t = tr.steps; t >= 1; --t) {
    for (std::size_t j = 0; j < dim_; ++j) {
      const double s = tr.states(t, j);
      da[j] = ds[j] * (1.0 - s * s);
      g_b[j] += da[j];
    }
    std::vector<double> ds_prev(dim_, 0.0);
    for (std::size_t i = 0; i < dim_; ++i) {
      const double e = tr.emb(t - 1, i);
      const double sp = tr.states(t - 1, i);
      double de = 0.0;
      double dsp = 0.0;
      for (std::size_t j = 0; j < dim_; ++j) {
        g_wx(i, j) += e * da[j];
        g_wh(i, j) += sp * da[j];
        de += wx(i, j) * da[j];
        dsp += wh(i, j) * da[j];
      }
      d_emb(t - 1, i) += de;
      ds_prev[i] = dsp;
    }
    ds = std::move(ds_prev);
  }
  for (std::size_t t = 0; t < t_len; ++t) {
    for (std::size_t j = 0; j < dim_; ++j) d_emb(t, j) += ds[j] / t_len;
  }
  kernel::embed_backward(params.grad_mut("enc.emb"), tr.ids, d_emb);
}

}  // namespace vlf::tagger
