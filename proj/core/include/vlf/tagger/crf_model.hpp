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

#ifndef VLF_TAGGER_CRF_MODEL_HPP_
#define VLF_TAGGER_CRF_MODEL_HPP_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vlf/kernel/attention.hpp"
#include "vlf/kernel/optim.hpp"
#include "vlf/kernel/param_set.hpp"
#include "vlf/subtitle/segments.hpp"
#include "vlf/tagger/crf.hpp"
#include "vlf/tagger/encoder.hpp"
#include "vlf/tagger/tags.hpp"

namespace vlf::tagger {

struct CrfModelConfig {
  std::size_t dim = 32;
  std::size_t heads = 2;
  std::size_t buckets = 2048;
  std::size_t max_tokens = 128;
  // Adds a trainable crf.start vector to the first emission row.
  bool start_bias = false;

  nlohmann::json to_json() const;
  static CrfModelConfig from_json(const nlohmann::json& j);
};

// Segment encoder, one positional attention layer (ctx.*), an emission
// projection (proj.w [d x 3], proj.b [3]) and transitions crf.M [3 x 3].
class CrfModel {
 public:
  // A null encoder selects the built-in ToyEncoder sized from the config.
  explicit CrfModel(CrfModelConfig config,
                    std::shared_ptr<const SegmentEncoder> encoder = nullptr);

  // Draws every parameter from `seed`. Must be called once before use
  // unless the parameters are loaded.
  void init(std::uint64_t seed);

  const CrfModelConfig& config() const { return config_; }
  const SegmentEncoder& encoder() const { return *encoder_; }
  ParamSet& params() { return params_; }
  const ParamSet& params() const { return params_; }

  // Only models with the built-in encoder can be saved.
  void save(const std::filesystem::path& path) const;
  static CrfModel load(const std::filesystem::path& path);

 private:
  CrfModelConfig config_;
  std::shared_ptr<const SegmentEncoder> encoder_;
  ParamSet params_;
};

// Row i is the encoding of segment i. Throws InputError for k = 0 and
// IntegrityError when an encoder row does not have dimension d.
Tensor encode_segments(const std::vector<std::string>& segment_texts,
                       const SegmentEncoder& encoder, const ParamSet& params);
Tensor encode_segments(const std::vector<subtitle::Segment>& segments,
                       const SegmentEncoder& encoder, const ParamSet& params);

// attention_layer(h + positions).
Tensor contextualize(const Tensor& h, const CrfModel& model,
                     kernel::AttentionLayerCache* cache = nullptr);

// affine(u, proj.w, proj.b), plus crf.start on row 0 when enabled.
Tensor emission_scores(const Tensor& u, const CrfModel& model);

// Emissions for a whole segment list.
Tensor segment_emissions(const CrfModel& model, const std::vector<std::string>& segment_texts);

// CRF negative log-likelihood of `gold`. When `grad_scale` is set, the
// gradient of grad_scale * loss is accumulated into the model's parameters.
double crf_model_loss(CrfModel& model, const std::vector<std::string>& segment_texts,
                      const TagSequence& gold, std::optional<double> grad_scale);

TagSequence predict_tags(const CrfModel& model, const std::vector<std::string>& segment_texts);

struct TaggedSequence {
  std::string video_id;
  std::vector<std::string> segments;
  TagSequence tags;
};

struct TaggerTrainConfig {
  std::size_t epochs = 200;
  std::size_t batch_size = 4;
  kernel::AdamConfig adam{};
  std::uint64_t seed = 0;

  // Learning rate as published for the pretrained encoder. Under-trains the
  // toy encoder; kept for reference runs.
  static TaggerTrainConfig full_scale_defaults();
};

struct TrainResult {
  // Mean per-sequence loss of each epoch, measured before that epoch's
  // updates are applied to later batches.
  std::vector<double> epoch_loss;
  // Set when the last epoch did not improve on the first.
  std::optional<std::string> diagnostic;
};

// Throws InputError for an empty corpus and DimensionError for a tag
// sequence whose length differs from its segment count.
void validate_corpus(const std::vector<TaggedSequence>& corpus);

TrainResult train_crf_tagger(CrfModel& model, const std::vector<TaggedSequence>& corpus,
                             const TaggerTrainConfig& config);

}  // namespace vlf::tagger

#endif  // VLF_TAGGER_CRF_MODEL_HPP_
