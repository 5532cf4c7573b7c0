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

#ifndef VLF_KERNEL_PARAM_SET_HPP_
#define VLF_KERNEL_PARAM_SET_HPP_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "vlf/kernel/rng.hpp"
#include "vlf/kernel/tensor.hpp"

namespace vlf::kernel {

// Named parameters with matching gradient accumulators. Iteration order is
// the lexicographic order of names, which keeps checkpoints and optimizer
// updates deterministic.
//
// Gradient slots are allocated lazily: a parameter whose slot was never
// touched has "no gradient", which adam_step reports as an integrity error.
class ParamSet {
 public:
  // Adds a parameter; throws IntegrityError when the name already exists.
  Tensor& add(const std::string& name, Tensor value);

  bool contains(std::string_view name) const;
  const Tensor& value(std::string_view name) const;
  Tensor& value_mut(std::string_view name);

  bool has_grad(std::string_view name) const;
  const Tensor& grad(std::string_view name) const;
  // Returns the gradient slot, allocating a zero tensor on first use.
  Tensor& grad_mut(std::string_view name);

  void allocate_grads();
  void zero_grads();

  std::vector<std::string> names() const;
  std::size_t size() const { return values_.size(); }
  std::size_t scalar_count() const;

  const std::map<std::string, Tensor, std::less<>>& values() const {
    return values_;
  }

  // Parameters equal by value; gradients are ignored.
  bool same_values(const ParamSet& other) const;

 private:
  std::map<std::string, Tensor, std::less<>> values_;
  std::map<std::string, Tensor, std::less<>> grads_;
};

// Glorot-uniform matrix.
Tensor xavier(std::size_t fan_in, std::size_t fan_out, Rng& rng);
Tensor normal_tensor(std::vector<std::size_t> shape, double stddev, Rng& rng);

}  // namespace vlf::kernel

#endif  // VLF_KERNEL_PARAM_SET_HPP_
