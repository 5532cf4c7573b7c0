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

#include "vlf/localizer/vision.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "common/le_io.hpp"
#include "vlf/errors.hpp"
#include "vlf/kernel/layers.hpp"

namespace vlf::localizer {

FrameFeatureTrack make_track(Tensor frames, double duration_s) {
  FrameFeatureTrack t{std::move(frames), duration_s};
  if (!(duration_s >= 0.0) || !std::isfinite(duration_s)) {
    throw InputError("feature track duration must be finite and non-negative");
  }
  if (static_cast<double>(t.n_frames()) != std::ceil(duration_s)) {
    throw InputError("feature track has " + std::to_string(t.n_frames()) +
                     " frames for a duration of " + std::to_string(duration_s) + " s");
  }
  if (!t.frames.all_finite()) throw InputError("feature track holds non-finite values");
  return t;
}

void write_feature_track(std::ostream& out, const FrameFeatureTrack& track) {
  out.write("VFTR", 4);
  detail::write_le<std::uint32_t>(out, kFeatureTrackVersion);
  detail::write_le<std::uint32_t>(out, static_cast<std::uint32_t>(track.n_frames()));
  detail::write_le<std::uint32_t>(out, static_cast<std::uint32_t>(track.dim()));
  for (double v : track.frames.data()) detail::write_f32(out, static_cast<float>(v));
  if (!out) throw InputError("failed writing feature track");
}

FrameFeatureTrack read_feature_track(std::istream& in) {
  detail::expect_magic(in, "VFTR", "feature track");
  const auto version = detail::read_le<std::uint32_t>(in, "feature track version");
  if (version != kFeatureTrackVersion) {
    throw InputError("unsupported feature track version " + std::to_string(version));
  }
  const auto n = detail::read_le<std::uint32_t>(in, "frame count");
  const auto d = detail::read_le<std::uint32_t>(in, "feature dimension");
  FrameFeatureTrack t;
  t.duration_s = n;
  if (n == 0 || d == 0) return t;
  t.frames = Tensor({n, d});
  for (double& v : t.frames.values()) v = detail::read_f32(in, "feature values");
  if (!t.frames.all_finite()) throw InputError("feature track holds non-finite values");
  return t;
}

void save_feature_track(const std::filesystem::path& path, const FrameFeatureTrack& track) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write feature track " + path.string());
  write_feature_track(out, track);
}

FrameFeatureTrack load_feature_track(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read feature track " + path.string());
  return read_feature_track(in);
}

Tensor mean_pool(const FrameFeatureTrack& track) {
  if (track.n_frames() == 0) throw InputError("feature track is empty");
  const std::size_t d = track.dim();
  Tensor out({1, d});
  for (std::size_t r = 0; r < track.n_frames(); ++r) {
    for (std::size_t j = 0; j < d; ++j) out(0, j) += track.frames(r, j);
  }
  kernel::scale_inplace(out, 1.0 / static_cast<double>(track.n_frames()));
  return out;
}

Tensor align_frames(const FrameFeatureTrack& track, const subtitle::TimeSpan& span) {
  const std::size_t n = track.n_frames();
  if (n == 0) throw InputError("feature track is empty");
  auto clamp_index = [n](double x) {
    if (!(x > 0.0)) return std::size_t{0};
    return std::min(n, static_cast<std::size_t>(x));
  };
  const std::size_t lo = clamp_index(std::floor(span.start_s));
  const std::size_t hi = clamp_index(std::ceil(span.end_s));
  const std::size_t d = track.dim();
  Tensor out({1, d});
  if (hi <= lo) {
    const std::size_t r = std::min(lo, n - 1);
    for (std::size_t j = 0; j < d; ++j) out(0, j) = track.frames(r, j);
    return out;
  }
  for (std::size_t r = lo; r < hi; ++r) {
    for (std::size_t j = 0; j < d; ++j) out(0, j) += track.frames(r, j);
  }
  kernel::scale_inplace(out, 1.0 / static_cast<double>(hi - lo));
  return out;
}

ToyVisionEncoder::ToyVisionEncoder(std::size_t feature_dim, std::size_t out_dim)
    : feature_dim_(feature_dim), out_dim_(out_dim) {
  if (feature_dim == 0 || out_dim == 0) throw ConfigError("vision dimensions must be positive");
}

Tensor ToyVisionEncoder::project(const Tensor& rows, const ParamSet& params) const {
  if (rows.cols() != feature_dim_) {
    throw ConfigError("frame features have " + std::to_string(rows.cols()) +
                      " columns, vision encoder expects " + std::to_string(feature_dim_));
  }
  return kernel::affine(rows, params, "vis.");
}

void ToyVisionEncoder::project_backward(const Tensor& rows, const Tensor& dy,
                                        ParamSet& params) const {
  kernel::affine_backward(rows, dy, params, "vis.");
}

void ToyVisionEncoder::init_params(ParamSet& params, kernel::Rng& rng) const {
  kernel::init_affine(params, "vis.", feature_dim_, out_dim_, rng);
}

Tensor vision_encode(const FrameFeatureTrack& track, const VisionEncoder& encoder,
                     const ParamSet& params) {
  return encoder.project(mean_pool(track), params);
}

Tensor fuse_vision(const Tensor& h, const Tensor& v, const ParamSet& params,
                   const std::string& prefix, FusionCache* cache) {
  const Tensor& w = params.value(prefix + "w");
  const std::size_t d_l = h.cols();
  const std::size_t d_v = v.cols();
  if (w.rows() != d_l + d_v || w.cols() != d_l) {
    throw ConfigError("fusion weights " + w.shape_string() + " do not fit states of width " +
                      std::to_string(d_l) + " and vision width " + std::to_string(d_v));
  }
  const bool broadcast = v.rows() == 1;
  if (!broadcast && v.rows() != h.rows()) {
    throw ConfigError("vision rows must be 1 or match the " + std::to_string(h.rows()) +
                      " state rows");
  }
  Tensor v_rows = v;
  if (broadcast) {
    std::vector<std::size_t> zeros(h.rows(), 0);
    v_rows = kernel::gather_rows(v, zeros);
  }
  Tensor x = kernel::concat_cols(h, v_rows);
  Tensor pre = kernel::affine(x, params, prefix);
  Tensor out = kernel::relu(pre);
  if (cache) {
    cache->x = std::move(x);
    cache->pre = std::move(pre);
    cache->broadcast = broadcast;
  }
  return out;
}

FusionGrads fuse_vision_backward(const FusionCache& cache, const Tensor& dy, ParamSet& params,
                                 const std::string& prefix) {
  Tensor dpre = kernel::relu_backward(cache.pre, dy);
  Tensor dx = kernel::affine_backward(cache.x, dpre, params, prefix);
  const std::size_t n = dx.rows();
  const std::size_t d_l = params.value(prefix + "w").cols();
  const std::size_t d_v = dx.cols() - d_l;
  FusionGrads g{Tensor({n, d_l}), Tensor({cache.broadcast ? 1 : n, d_v})};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d_l; ++j) g.dh(i, j) = dx(i, j);
    const std::size_t r = cache.broadcast ? 0 : i;
    for (std::size_t j = 0; j < d_v; ++j) g.dv(r, j) += dx(i, d_l + j);
  }
  return g;
}

void init_fusion(ParamSet& params, const std::string& prefix, std::size_t d_l, std::size_t d_v,
                 kernel::Rng& rng, bool identity) {
  if (!identity) {
    kernel::init_affine(params, prefix, d_l + d_v, d_l, rng);
    return;
  }
  Tensor w({d_l + d_v, d_l});
  for (std::size_t i = 0; i < d_l; ++i) w(i, i) = 1.0;
  params.add(prefix + "w", std::move(w));
  params.add(prefix + "b", Tensor({d_l}));
}

}  // namespace vlf::localizer
