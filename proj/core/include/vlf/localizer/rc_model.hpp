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

#ifndef VLF_LOCALIZER_RC_MODEL_HPP_
#define VLF_LOCALIZER_RC_MODEL_HPP_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vlf/kernel/optim.hpp"
#include "vlf/kernel/param_set.hpp"
#include "vlf/localizer/packing.hpp"
#include "vlf/localizer/vision.hpp"
#include "vlf/qg/qg_model.hpp"
#include "vlf/subtitle/timeline.hpp"
#include "vlf/text/vocab.hpp"

namespace vlf::localizer {

enum class FusionMode {
  kNone,
  kGlobal,   // one vision vector per video
  kPerWord,  // frames pooled over each word's span
};

std::string fusion_mode_name(FusionMode mode);
FusionMode parse_fusion_mode(const std::string& name);

struct RcConfig {
  std::size_t dim = 32;
  std::size_t heads = 2;
  std::size_t max_len = 1024;
  std::size_t max_span = 256;
  FusionMode fusion = FusionMode::kNone;
  std::size_t feature_dim = 16;  // frame feature width in the track files
  std::size_t vision_dim = 16;   // vision vector width
  bool identity_fusion_init = false;

  void validate() const;
  nlohmann::json to_json() const;
  static RcConfig from_json(const nlohmann::json& j);
};

// Span reader: emb [V x d] plus positions, one attention layer (enc.*),
// optional vision encoder (vis.*) and fusion projection (fuse.*), then
// start.* and end.* heads of width 1.
class RcModel {
 public:
  RcModel(RcConfig config, text::Vocab vocab,
          std::shared_ptr<const VisionEncoder> vision = nullptr);

  void init(std::uint64_t seed);

  const RcConfig& config() const { return config_; }
  const text::Vocab& vocab() const { return vocab_; }
  const VisionEncoder* vision() const { return vision_.get(); }
  ParamSet& params() { return params_; }
  const ParamSet& params() const { return params_; }

  void save(const std::filesystem::path& path) const;
  static RcModel load(const std::filesystem::path& path);

 private:
  RcConfig config_;
  text::Vocab vocab_;
  std::shared_ptr<const VisionEncoder> vision_;
  ParamSet params_;
};

// One localization question.
struct LocalizerItem {
  std::string video_id;
  std::string question_id;
  text::Tokens question;
  std::shared_ptr<const subtitle::WordTimeline> timeline;
  subtitle::TimeSpan gold;
  std::shared_ptr<const FrameFeatureTrack> track;  // required when fusion is on
  std::optional<double> duration_s;
};

struct SpanLogits {
  // Non-subtitle positions hold -inf.
  std::vector<double> start;
  std::vector<double> end;
};

SpanLogits span_logits(const RcModel& model, const PackedInput& input,
                       const subtitle::WordTimeline& timeline,
                       const FrameFeatureTrack* track = nullptr);

struct Localization {
  std::size_t start_position = 0;
  std::size_t end_position = 0;
  subtitle::TimeSpan span;
};

Localization localize(const RcModel& model, const LocalizerItem& item);

// Start plus end cross-entropy over the subtitle positions against the
// gold word positions. Returns nothing when the gold span falls outside the
// packed subtitle. Accumulates the gradient of grad_scale * loss when set.
std::optional<double> rc_loss(RcModel& model, const LocalizerItem& item,
                              std::optional<double> grad_scale);

struct LocalizerTrainConfig {
  std::size_t epochs = 10;
  std::size_t batch_size = 2;
  kernel::AdamConfig adam{};
  std::uint64_t seed = 0;
  double qg_weight = 1.0;  // lambda on the question-generation loss
};

struct StepReport {
  double loss = 0.0;  // mean over the batch items that were used
  std::size_t used = 0;
  std::size_t skipped = 0;
};

// One plain reading-comprehension update on a batch.
StepReport rc_train_step(RcModel& model, const std::vector<const LocalizerItem*>& batch,
                         kernel::OptimState& state);

// One joint update: L = L_f + qg_weight * L_g, where L_g is the question
// loss on the RC states of the currently predicted span (hard selection).
// Gradients reach the RC model only through those states.
StepReport ccal_step(RcModel& rc, qg::QgModel& qg, const std::vector<const LocalizerItem*>& batch,
                     kernel::OptimState& rc_state, kernel::OptimState& qg_state,
                     double qg_weight);

struct LocalizerTrainResult {
  std::vector<double> step_loss;
  std::size_t skipped = 0;  // item visits skipped for out-of-range gold spans
};

LocalizerTrainResult train_rc(RcModel& model, const std::vector<LocalizerItem>& items,
                              const LocalizerTrainConfig& config);

// Requires rc and qg to share the hidden width.
LocalizerTrainResult train_ccal(RcModel& rc, qg::QgModel& qg,
                                const std::vector<LocalizerItem>& items,
                                const LocalizerTrainConfig& config);

// Vocabulary over question tokens and packed subtitle words.
text::Vocab build_localizer_vocab(const std::vector<LocalizerItem>& items);

}  // namespace vlf::localizer

#endif  // VLF_LOCALIZER_RC_MODEL_HPP_
