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

#include "vlf/kernel/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "vlf/errors.hpp"
#include "vlf/kernel/rng.hpp"

namespace vlf::kernel {

double fd_gradcheck(const LossFn& loss_fn, const ParamSet& params,
                    const GradcheckOptions& options) {
  if (!(options.eps > 0.0)) throw ConfigError("fd_gradcheck: eps must be > 0");
  ParamSet probe = params;
  Rng rng(options.seed);
  double worst = 0.0;

  auto evaluate = [&](const ParamSet& p) {
    const double v = loss_fn(p);
    if (!std::isfinite(v)) throw NumericError("fd_gradcheck: non-finite loss");
    return v;
  };
  evaluate(probe);

  for (const std::string& name : params.names()) {
    const Tensor& analytic = params.grad(name);
    const std::size_t n = analytic.size();
    std::vector<std::size_t> coords(n);
    std::iota(coords.begin(), coords.end(), std::size_t{0});
    if (n > options.sample_threshold) {
      rng.shuffle(coords);
      coords.resize(options.samples_per_tensor);
    }
    for (std::size_t i : coords) {
      double& w = probe.value_mut(name)[i];
      const double saved = w;
      w = saved + options.eps;
      const double up = evaluate(probe);
      w = saved - options.eps;
      const double down = evaluate(probe);
      w = saved;
      const double numeric = (up - down) / (2.0 * options.eps);
      const double a = analytic[i];
      const double denom =
          std::max({std::abs(a), std::abs(numeric), options.floor});
      worst = std::max(worst, std::abs(a - numeric) / denom);
    }
  }
  return worst;
}

}  // namespace vlf::kernel
