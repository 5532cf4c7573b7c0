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

#include "vlf/kernel/layers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "vlf/errors.hpp"

namespace vlf::kernel {

namespace {
constexpr double kLayerNormEps = 1e-5;
const double kGeluScale = std::sqrt(2.0 / std::numbers::pi);
}  // namespace

Tensor affine(const Tensor& x, const Tensor& w, const Tensor& b) {
  if (x.cols() != w.rows() || b.size() != w.cols()) {
    throw DimensionError("affine: cannot apply weights " + w.shape_string() +
                         " and bias " + b.shape_string() + " to input " +
                         x.shape_string());
  }
  Tensor out = matmul(x, w);
  if (x.rank() == 1) out = Tensor({w.cols()}, out.data());
  for (std::size_t i = 0; i < out.rows(); ++i) {
    auto r = out.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) r[j] += b[j];
  }
  return out;
}

AffineGrads affine_backward(const Tensor& x, const Tensor& w, const Tensor& dy) {
  if (dy.rows() != x.rows() || dy.cols() != w.cols()) {
    throw DimensionError("affine_backward: upstream gradient " + dy.shape_string() +
                         " does not match output of " + x.shape_string() +
                         " x " + w.shape_string());
  }
  AffineGrads g;
  g.dx = matmul_nt(dy, w);
  if (x.rank() == 1) g.dx = Tensor({x.size()}, g.dx.data());
  g.dw = matmul_tn(x.rank() == 1 ? Tensor({1, x.size()}, x.data()) : x,
                   dy.rank() == 1 ? Tensor({1, dy.size()}, dy.data()) : dy);
  g.db = Tensor({w.cols()});
  for (std::size_t i = 0; i < dy.rows(); ++i) {
    auto r = dy.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) g.db[j] += r[j];
  }
  return g;
}

Tensor affine(const Tensor& x, const ParamSet& params, const std::string& prefix) {
  return affine(x, params.value(prefix + "w"), params.value(prefix + "b"));
}

Tensor affine_backward(const Tensor& x, const Tensor& dy, ParamSet& params,
                       const std::string& prefix) {
  AffineGrads g = affine_backward(x, params.value(prefix + "w"), dy);
  add_inplace(params.grad_mut(prefix + "w"), g.dw);
  add_inplace(params.grad_mut(prefix + "b"), g.db);
  return std::move(g.dx);
}

void init_affine(ParamSet& params, const std::string& prefix, std::size_t in,
                 std::size_t out, Rng& rng) {
  params.add(prefix + "w", xavier(in, out, rng));
  params.add(prefix + "b", Tensor({out}));
}

Tensor layer_norm(const Tensor& x, const ParamSet& params,
                  const std::string& prefix, LayerNormCache* cache) {
  const Tensor& gain = params.value(prefix + "gain");
  const Tensor& bias = params.value(prefix + "bias");
  const std::size_t n = x.rows(), d = x.cols();
  if (gain.size() != d) {
    throw DimensionError("layer_norm: gain " + gain.shape_string() +
                         " does not match input " + x.shape_string());
  }
  Tensor xhat({n, d});
  Tensor out({n, d});
  std::vector<double> inv_std(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto r = x.row(i);
    double mean = 0.0;
    for (double v : r) mean += v;
    mean /= static_cast<double>(d);
    double var = 0.0;
    for (double v : r) var += (v - mean) * (v - mean);
    var /= static_cast<double>(d);
    inv_std[i] = 1.0 / std::sqrt(var + kLayerNormEps);
    for (std::size_t j = 0; j < d; ++j) {
      xhat(i, j) = (r[j] - mean) * inv_std[i];
      out(i, j) = gain[j] * xhat(i, j) + bias[j];
    }
  }
  if (cache) {
    cache->xhat = std::move(xhat);
    cache->inv_std = std::move(inv_std);
  }
  return out;
}

Tensor layer_norm_backward(const LayerNormCache& cache, const Tensor& dy,
                           ParamSet& params, const std::string& prefix) {
  const Tensor& gain = params.value(prefix + "gain");
  Tensor& dgain = params.grad_mut(prefix + "gain");
  Tensor& dbias = params.grad_mut(prefix + "bias");
  const std::size_t n = dy.rows(), d = dy.cols();
  Tensor dx({n, d});
  std::vector<double> dxhat(d);
  for (std::size_t i = 0; i < n; ++i) {
    double mean_dxhat = 0.0, mean_dxhat_xhat = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      dgain[j] += dy(i, j) * cache.xhat(i, j);
      dbias[j] += dy(i, j);
      dxhat[j] = dy(i, j) * gain[j];
      mean_dxhat += dxhat[j];
      mean_dxhat_xhat += dxhat[j] * cache.xhat(i, j);
    }
    mean_dxhat /= static_cast<double>(d);
    mean_dxhat_xhat /= static_cast<double>(d);
    for (std::size_t j = 0; j < d; ++j) {
      dx(i, j) = cache.inv_std[i] *
                 (dxhat[j] - mean_dxhat - cache.xhat(i, j) * mean_dxhat_xhat);
    }
  }
  return dx;
}

void init_layer_norm(ParamSet& params, const std::string& prefix, std::size_t d) {
  Tensor gain({d});
  gain.fill(1.0);
  params.add(prefix + "gain", std::move(gain));
  params.add(prefix + "bias", Tensor({d}));
}

double gelu(double x) {
  return 0.5 * x * (1.0 + std::tanh(kGeluScale * (x + 0.044715 * x * x * x)));
}

double gelu_grad(double x) {
  const double inner = kGeluScale * (x + 0.044715 * x * x * x);
  const double t = std::tanh(inner);
  const double dinner = kGeluScale * (1.0 + 3.0 * 0.044715 * x * x);
  return 0.5 * (1.0 + t) + 0.5 * x * (1.0 - t * t) * dinner;
}

Tensor feed_forward(const Tensor& x, const ParamSet& params,
                    const std::string& prefix, FeedForwardCache* cache) {
  Tensor pre = affine(x, params, prefix + "l1.");
  Tensor act = pre;
  for (double& v : act.values()) v = gelu(v);
  Tensor out = affine(act, params, prefix + "l2.");
  if (cache) {
    cache->x = x;
    cache->pre = std::move(pre);
    cache->act = std::move(act);
  }
  return out;
}

Tensor feed_forward_backward(const FeedForwardCache& cache, const Tensor& dy,
                             ParamSet& params, const std::string& prefix) {
  Tensor dact = affine_backward(cache.act, dy, params, prefix + "l2.");
  auto pre = cache.pre.values();
  auto da = dact.values();
  for (std::size_t i = 0; i < da.size(); ++i) da[i] *= gelu_grad(pre[i]);
  return affine_backward(cache.x, dact, params, prefix + "l1.");
}

void init_feed_forward(ParamSet& params, const std::string& prefix,
                       std::size_t d, std::size_t hidden, Rng& rng) {
  init_affine(params, prefix + "l1.", d, hidden, rng);
  init_affine(params, prefix + "l2.", hidden, d, rng);
}

Tensor relu(const Tensor& x) {
  Tensor out = x;
  for (double& v : out.values()) v = v > 0.0 ? v : 0.0;
  return out;
}

Tensor relu_backward(const Tensor& pre, const Tensor& dy) {
  Tensor dx = dy;
  auto p = pre.values();
  auto d = dx.values();
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!(p[i] > 0.0)) d[i] = 0.0;
  }
  return dx;
}

Tensor embed(const Tensor& table, std::span<const std::size_t> ids) {
  return gather_rows(table, ids);
}

void embed_backward(Tensor& table_grad, std::span<const std::size_t> ids,
                    const Tensor& dy) {
  for (std::size_t i = 0; i < ids.size(); ++i) {
    auto dst = table_grad.row(ids[i]);
    auto src = dy.row(i);
    for (std::size_t j = 0; j < dst.size(); ++j) dst[j] += src[j];
  }
}

Tensor sinusoidal_positions(std::size_t k, std::size_t d) {
  if (k == 0) throw ConfigError("sinusoidal_positions: k must be >= 1");
  if (d == 0 || d % 2 != 0) {
    throw ConfigError("sinusoidal_positions: dimension must be even, got " +
                      std::to_string(d));
  }
  Tensor pe({k, d});
  for (std::size_t pos = 0; pos < k; ++pos) {
    for (std::size_t i = 0; i < d / 2; ++i) {
      const double angle =
          static_cast<double>(pos) /
          std::pow(10000.0, static_cast<double>(2 * i) / static_cast<double>(d));
      pe(pos, 2 * i) = std::sin(angle);
      pe(pos, 2 * i + 1) = std::cos(angle);
    }
  }
  return pe;
}

double log_sum_exp(std::span<const double> values) {
  double m = -std::numeric_limits<double>::infinity();
  for (double v : values) m = std::max(m, v);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double v : values) s += std::exp(v - m);
  return m + std::log(s);
}

std::vector<double> softmax(std::span<const double> logits) {
  double m = -std::numeric_limits<double>::infinity();
  for (double v : logits) m = std::max(m, v);
  std::vector<double> p(logits.size());
  double s = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    p[i] = std::exp(logits[i] - m);
    s += p[i];
  }
  for (double& v : p) v /= s;
  return p;
}

XentResult softmax_xent(std::span<const double> logits, std::size_t target) {
  if (target >= logits.size()) {
    throw IndexError("softmax_xent: target " + std::to_string(target) +
                     " out of range for " + std::to_string(logits.size()) +
                     " classes");
  }
  XentResult r;
  // log1p over the non-maximal terms keeps precision when one logit dominates.
  std::size_t top = 0;
  for (std::size_t i = 1; i < logits.size(); ++i) {
    if (logits[i] > logits[top]) top = i;
  }
  double rest = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    if (i != top) rest += std::exp(logits[i] - logits[top]);
  }
  r.loss = std::log1p(rest) + (logits[top] - logits[target]);
  if (!std::isfinite(r.loss)) throw NumericError("softmax_xent: non-finite loss");
  // Rounding can produce -0.0 or tiny negatives when p(target) == 1.
  r.loss = std::max(r.loss, 0.0);
  r.grad = softmax(logits);
  r.grad[target] -= 1.0;
  return r;
}

}  // namespace vlf::kernel
