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

#ifndef VLF_KERNEL_GRADCHECK_HPP_
#define VLF_KERNEL_GRADCHECK_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>

#include "vlf/kernel/param_set.hpp"

namespace vlf::kernel {

using LossFn = std::function<double(const ParamSet&)>;

struct GradcheckOptions {
  double eps = 1e-5;
  // Denominator floor: error = |a - n| / max(|a|, |n|, floor). Without it,
  // coordinates with a true gradient near zero would report the central
  // difference's rounding noise as a huge relative error.
  double floor = 1e-3;
  // Tensors above this size are checked on a random coordinate sample.
  std::size_t sample_threshold = 10000;
  std::size_t samples_per_tensor = 200;
  std::uint64_t seed = 0;
};

// Compares the analytic gradients stored in `params` against central
// differences of `loss_fn`, returning the worst relative error.
// Throws NumericError if the loss is ever non-finite.
double fd_gradcheck(const LossFn& loss_fn, const ParamSet& params,
                    const GradcheckOptions& options = {});

}  // namespace vlf::kernel

#endif  // VLF_KERNEL_GRADCHECK_HPP_
