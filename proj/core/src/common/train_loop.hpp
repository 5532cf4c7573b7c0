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

#ifndef VLF_COMMON_TRAIN_LOOP_HPP_
#define VLF_COMMON_TRAIN_LOOP_HPP_

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "vlf/errors.hpp"
#include "vlf/kernel/optim.hpp"
#include "vlf/kernel/param_set.hpp"
#include "vlf/kernel/rng.hpp"

namespace vlf::detail {

// Shuffled minibatch Adam loop over n items. `step(index, scale)` returns
// the item loss and accumulates the gradient of scale * loss. Returns the
// mean item loss of every epoch.
template <typename Step>
std::vector<double> run_epochs(kernel::ParamSet& params, std::size_t n, std::size_t epochs,
                               std::size_t batch_size, const kernel::AdamConfig& adam,
                               std::uint64_t seed, Step&& step) {
  if (batch_size == 0) throw ConfigError("batch size must be positive");
  std::vector<double> trace;
  if (n == 0) return trace;
  params.allocate_grads();
  kernel::OptimState opt(params, adam);
  kernel::Rng rng(seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
    rng.shuffle(order);
    double total = 0.0;
    for (std::size_t start = 0; start < n; start += batch_size) {
      const std::size_t end = std::min(n, start + batch_size);
      const double scale = 1.0 / static_cast<double>(end - start);
      params.zero_grads();
      for (std::size_t b = start; b < end; ++b) total += step(order[b], scale);
      kernel::adam_step(params, opt);
    }
    trace.push_back(total / static_cast<double>(n));
  }
  return trace;
}

inline std::optional<std::string> loss_diagnostic(const std::vector<double>& trace) {
  if (trace.size() < 2 || trace.back() < trace.front()) return std::nullopt;
  return "training loss did not decrease: first epoch " + std::to_string(trace.front()) +
         ", last epoch " + std::to_string(trace.back());
}

}  // namespace vlf::detail

#endif  // VLF_COMMON_TRAIN_LOOP_HPP_
