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

#ifndef VLF_KERNEL_OPTIM_HPP_
#define VLF_KERNEL_OPTIM_HPP_

#include <cstdint>
#include <map>
#include <string>

#include "vlf/kernel/param_set.hpp"

namespace vlf::kernel {

struct AdamConfig {
  double learning_rate = 4e-3;
  double weight_decay = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// First/second moments per parameter plus the step counter.
class OptimState {
 public:
  OptimState(const ParamSet& params, AdamConfig config);

  const AdamConfig& config() const { return config_; }
  std::uint64_t step() const { return step_; }
  const Tensor& first_moment(const std::string& name) const;
  const Tensor& second_moment(const std::string& name) const;

 private:
  friend void adam_step(ParamSet& params, OptimState& state);

  AdamConfig config_;
  std::uint64_t step_ = 0;
  std::map<std::string, Tensor, std::less<>> m_;
  std::map<std::string, Tensor, std::less<>> v_;
};

// Bias-corrected Adam with decoupled weight decay:
//   w <- w - lr * (m_hat / (sqrt(v_hat) + eps) + wd * w)
// Gradients are zeroed afterwards.
void adam_step(ParamSet& params, OptimState& state);

}  // namespace vlf::kernel

#endif  // VLF_KERNEL_OPTIM_HPP_
