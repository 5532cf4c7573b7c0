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

#ifndef VLF_LOCALIZER_VISION_HPP_
#define VLF_LOCALIZER_VISION_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "vlf/kernel/param_set.hpp"
#include "vlf/kernel/rng.hpp"
#include "vlf/kernel/tensor.hpp"
#include "vlf/subtitle/time_span.hpp"

namespace vlf::localizer {

using kernel::ParamSet;
using kernel::Tensor;

// One feature row per second of video.
struct FrameFeatureTrack {
  Tensor frames;  // [n_frames x d_v]
  double duration_s = 0.0;

  std::size_t n_frames() const { return frames.size() == 0 ? 0 : frames.rows(); }
  std::size_t dim() const { return frames.size() == 0 ? 0 : frames.cols(); }
};

// Throws InputError unless n_frames = ceil(duration) and every value is
// finite.
FrameFeatureTrack make_track(Tensor frames, double duration_s);

// "VFTR" | u32 version 1 | u32 n_frames | u32 d_v | f32 row-major values,
// all little-endian. Values are stored as f32.
inline constexpr std::uint32_t kFeatureTrackVersion = 1;
void write_feature_track(std::ostream& out, const FrameFeatureTrack& track);
// The duration of a loaded track is its frame count.
FrameFeatureTrack read_feature_track(std::istream& in);
void save_feature_track(const std::filesystem::path& path, const FrameFeatureTrack& track);
FrameFeatureTrack load_feature_track(const std::filesystem::path& path);

// Mean of the rows whose second index lies in [floor(start), ceil(end)),
// clamped to the track; an empty range yields the row at floor(start),
// clamped. Returns [1 x d_v].
Tensor align_frames(const FrameFeatureTrack& track, const subtitle::TimeSpan& span);

// Mean over all frames, [1 x d_v]. Throws InputError for an empty track.
Tensor mean_pool(const FrameFeatureTrack& track);

// Maps pooled frame rows [m x feature_dim] to vision vectors
// [m x out_dim]. Parameters live in the caller's ParamSet.
class VisionEncoder {
 public:
  virtual ~VisionEncoder() = default;
  virtual std::size_t feature_dim() const = 0;
  virtual std::size_t out_dim() const = 0;
  virtual Tensor project(const Tensor& rows, const ParamSet& params) const = 0;
  // Accumulates parameter gradients; frozen encoders keep the no-op.
  virtual void project_backward(const Tensor& rows, const Tensor& dy, ParamSet& params) const {
    (void)rows;
    (void)dy;
    (void)params;
  }
  virtual void init_params(ParamSet& params, kernel::Rng& rng) const {
    (void)params;
    (void)rng;
  }
};

// affine(rows, vis.w, vis.b).
class ToyVisionEncoder : public VisionEncoder {
 public:
  ToyVisionEncoder(std::size_t feature_dim, std::size_t out_dim);
  std::size_t feature_dim() const override { return feature_dim_; }
  std::size_t out_dim() const override { return out_dim_; }
  Tensor project(const Tensor& rows, const ParamSet& params) const override;
  void project_backward(const Tensor& rows, const Tensor& dy, ParamSet& params) const override;
  void init_params(ParamSet& params, kernel::Rng& rng) const override;

 private:
  std::size_t feature_dim_;
  std::size_t out_dim_;
};

// Global vision vector of a track, [1 x out_dim].
Tensor vision_encode(const FrameFeatureTrack& track, const VisionEncoder& encoder,
                     const ParamSet& params);

struct FusionCache {
  Tensor x;    // concat(h, v) rows
  Tensor pre;  // affine output before the rectifier
  bool broadcast = false;
};

// relu(affine(concat(h_i, v_i))) with weights prefix+"w" [(d_l + d_v) x d_l]
// and prefix+"b". `v` is either one row shared by every position or one row
// per position. Throws ConfigError on dimension mismatch.
Tensor fuse_vision(const Tensor& h, const Tensor& v, const ParamSet& params,
                   const std::string& prefix, FusionCache* cache = nullptr);

struct FusionGrads {
  Tensor dh;
  Tensor dv;  // same row count as the `v` given to fuse_vision
};

FusionGrads fuse_vision_backward(const FusionCache& cache, const Tensor& dy, ParamSet& params,
                                 const std::string& prefix);

// identity = true sets w = [I; 0] and b = 0, so the output is relu(h) at
// initialization regardless of v.
void init_fusion(ParamSet& params, const std::string& prefix, std::size_t d_l, std::size_t d_v,
                 kernel::Rng& rng, bool identity);

}  // namespace vlf::localizer

#endif  // VLF_LOCALIZER_VISION_HPP_
