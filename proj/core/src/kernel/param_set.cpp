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

#include "vlf/kernel/param_set.hpp"

#include <cmath>

#include "vlf/errors.hpp"

namespace vlf::kernel {

Tensor& ParamSet::add(const std::string& name, Tensor value) {
  if (values_.contains(name)) {
    throw IntegrityError("duplicate parameter name '" + name + "'");
  }
  return values_.emplace(name, std::move(value)).first->second;
}

bool ParamSet::contains(std::string_view name) const {
  return values_.find(name) != values_.end();
}

const Tensor& ParamSet::value(std::string_view name) const {
  auto it = values_.find(name);
  if (it == values_.end()) {
    throw IntegrityError("unknown parameter '" + std::string(name) + "'");
  }
  return it->second;
}

Tensor& ParamSet::value_mut(std::string_view name) {
  return const_cast<Tensor&>(std::as_const(*this).value(name));
}

bool ParamSet::has_grad(std::string_view name) const {
  return grads_.find(name) != grads_.end();
}

const Tensor& ParamSet::grad(std::string_view name) const {
  auto it = grads_.find(name);
  if (it == grads_.end()) {
    throw IntegrityError("parameter '" + std::string(name) + "' has no gradient");
  }
  return it->second;
}

Tensor& ParamSet::grad_mut(std::string_view name) {
  auto it = grads_.find(name);
  if (it != grads_.end()) return it->second;
  const Tensor& v = value(name);
  return grads_.emplace(std::string(name), Tensor(v.shape())).first->second;
}

void ParamSet::allocate_grads() {
  for (const auto& [name, v] : values_) grad_mut(name);
}

void ParamSet::zero_grads() {
  for (auto& [name, g] : grads_) g.fill(0.0);
}

std::vector<std::string> ParamSet::names() const {
  std::vector<std::string> out;
  out.reserve(values_.size());
  for (const auto& [name, v] : values_) out.push_back(name);
  return out;
}

std::size_t ParamSet::scalar_count() const {
  std::size_t n = 0;
  for (const auto& [name, v] : values_) n += v.size();
  return n;
}

bool ParamSet::same_values(const ParamSet& other) const {
  return values_ == other.values_;
}

Tensor xavier(std::size_t fan_in, std::size_t fan_out, Rng& rng) {
  const double a = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  Tensor t({fan_in, fan_out});
  for (double& v : t.values()) v = rng.uniform(-a, a);
  return t;
}

Tensor normal_tensor(std::vector<std::size_t> shape, double stddev, Rng& rng) {
  Tensor t(std::move(shape));
  for (double& v : t.values()) v = stddev * rng.normal();
  return t;
}

}  // namespace vlf::kernel
