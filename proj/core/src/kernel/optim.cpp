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

#include "vlf/kernel/optim.hpp"

#include <cmath>

#include "vlf/errors.hpp"

namespace vlf::kernel {

OptimState::OptimState(const ParamSet& params, AdamConfig config)
    : config_(config) {
  if (!(config_.learning_rate > 0.0)) throw ConfigError("adam: learning rate must be > 0");
  if (config_.weight_decay < 0.0) throw ConfigError("adam: weight decay must be >= 0");
  for (const auto& [name, v] : params.values()) {
    m_.emplace(name, Tensor(v.shape()));
    v_.emplace(name, Tensor(v.shape()));
  }
}

const Tensor& OptimState::first_moment(const std::string& name) const {
  return m_.at(name);
}

const Tensor& OptimState::second_moment(const std::string& name) const {
  return v_.at(name);
}

void adam_step(ParamSet& params, OptimState& state) {
  const AdamConfig& c = state.config_;
  for (const auto& [name, value] : params.values()) {
    if (!params.has_grad(name)) {
      throw IntegrityError("adam_step: parameter '" + name + "' has no gradient");
    }
    auto it = state.m_.find(name);
    if (it == state.m_.end() || !it->second.same_shape(value)) {
      throw IntegrityError("adam_step: optimizer moments do not match parameter '" +
                           name + "'");
    }
  }
  ++state.step_;
  const double t = static_cast<double>(state.step_);
  const double bc1 = 1.0 - std::pow(c.beta1, t);
  const double bc2 = 1.0 - std::pow(c.beta2, t);
  for (const std::string& name : params.names()) {
    auto w = params.value_mut(name).values();
    auto g = params.grad_mut(name).values();
    auto m = state.m_.at(name).values();
    auto v = state.v_.at(name).values();
    for (std::size_t i = 0; i < w.size(); ++i) {
      m[i] = c.beta1 * m[i] + (1.0 - c.beta1) * g[i];
      v[i] = c.beta2 * v[i] + (1.0 - c.beta2) * g[i] * g[i];
      const double mhat = m[i] / bc1;
      const double vhat = v[i] / bc2;
      w[i] -= c.learning_rate * (mhat / (std::sqrt(vhat) + c.epsilon) +
                                 c.weight_decay * w[i]);
    }
  }
  params.zero_grads();
}

}  // namespace vlf::kernel
