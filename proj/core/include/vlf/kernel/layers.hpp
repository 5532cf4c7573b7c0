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

#ifndef VLF_KERNEL_LAYERS_HPP_
#define VLF_KERNEL_LAYERS_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "vlf/kernel/param_set.hpp"
#include "vlf/kernel/tensor.hpp"

namespace vlf::kernel {

// out[i][j] = sum_m x[i][m] * w[m][j] + b[j]
Tensor affine(const Tensor& x, const Tensor& w, const Tensor& b);

struct AffineGrads {
  Tensor dx;
  Tensor dw;
  Tensor db;
};
AffineGrads affine_backward(const Tensor& x, const Tensor& w, const Tensor& dy);

// Affine layer whose weights live in `params` as <prefix>w and <prefix>b.
// The backward variant accumulates into the parameter gradients and returns
// the input gradient.
Tensor affine(const Tensor& x, const ParamSet& params, const std::string& prefix);
Tensor affine_backward(const Tensor& x, const Tensor& dy, ParamSet& params,
                       const std::string& prefix);
void init_affine(ParamSet& params, const std::string& prefix, std::size_t in,
                 std::size_t out, Rng& rng);

// Row-wise layer normalization with gain <prefix>gain and bias <prefix>bias.
struct LayerNormCache {
  Tensor xhat;
  std::vector<double> inv_std;
};
Tensor layer_norm(const Tensor& x, const ParamSet& params,
                  const std::string& prefix, LayerNormCache* cache);
Tensor layer_norm_backward(const LayerNormCache& cache, const Tensor& dy,
                           ParamSet& params, const std::string& prefix);
void init_layer_norm(ParamSet& params, const std::string& prefix, std::size_t d);

// Two-layer position-wise feed-forward block with a tanh-approximated GELU.
struct FeedForwardCache {
  Tensor x;
  Tensor pre;  // x W1 + b1
  Tensor act;  // gelu(pre)
};
Tensor feed_forward(const Tensor& x, const ParamSet& params,
                    const std::string& prefix, FeedForwardCache* cache);
Tensor feed_forward_backward(const FeedForwardCache& cache, const Tensor& dy,
                             ParamSet& params, const std::string& prefix);
void init_feed_forward(ParamSet& params, const std::string& prefix,
                       std::size_t d, std::size_t hidden, Rng& rng);

double gelu(double x);
double gelu_grad(double x);

Tensor relu(const Tensor& x);
// Gradient of relu at pre-activation `pre`.
Tensor relu_backward(const Tensor& pre, const Tensor& dy);

// Row lookup and its scatter-add adjoint.
Tensor embed(const Tensor& table, std::span<const std::size_t> ids);
void embed_backward(Tensor& table_grad, std::span<const std::size_t> ids,
                    const Tensor& dy);

// Sine/cosine position table: even columns sin(pos / 10000^(2i/d)), odd
// columns the matching cosine. `d` must be even.
Tensor sinusoidal_positions(std::size_t k, std::size_t d);

// Numerically stable softmax of a vector.
std::vector<double> softmax(std::span<const double> logits);
double log_sum_exp(std::span<const double> values);

struct XentResult {
  double loss;
  std::vector<double> grad;
};
// Negative log-likelihood of `target` under softmax(logits), with the
// gradient softmax(logits) - onehot(target).
XentResult softmax_xent(std::span<const double> logits, std::size_t target);

}  // namespace vlf::kernel

#endif  // VLF_KERNEL_LAYERS_HPP_
