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

#include "vlf/tagger/crf_model.hpp"

#include "common/train_loop.hpp"
#include "vlf/common/model_file.hpp"
#include "vlf/errors.hpp"
#include "vlf/kernel/layers.hpp"

namespace vlf::tagger {

using kernel::Rng;

namespace {
constexpr const char* kModelKind = "crf-tagger";
}  // namespace

nlohmann::json CrfModelConfig::to_json() const {
  return {{"dim", dim},           {"heads", heads},          {"buckets", buckets},
          {"max_tokens", max_tokens}, {"start_bias", start_bias}, {"encoder", "toy"}};
}

CrfModelConfig CrfModelConfig::from_json(const nlohmann::json& j) {
  CrfModelConfig c;
  try {
    c.dim = j.at("dim").get<std::size_t>();
    c.heads = j.at("heads").get<std::size_t>();
    c.buckets = j.at("buckets").get<std::size_t>();
    c.max_tokens = j.at("max_tokens").get<std::size_t>();
    c.start_bias = j.at("start_bias").get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("CRF model config: ") + e.what());
  }
  return c;
}

CrfModel::CrfModel(CrfModelConfig config, std::shared_ptr<const SegmentEncoder> encoder)
    : config_(config), encoder_(std::move(encoder)) {
  if (!encoder_) {
    encoder_ = std::make_shared<ToyEncoder>(config_.dim, config_.buckets, config_.max_tokens);
  }
  if (encoder_->dim() != config_.dim) {
    throw ConfigError("encoder dimension " + std::to_string(encoder_->dim()) +
                      " differs from model dimension " + std::to_string(config_.dim));
  }
  if (config_.heads == 0 || config_.dim % config_.heads != 0) {
    throw ConfigError("model dimension must be divisible by the head count");
  }
}

void CrfModel::init(std::uint64_t seed) {
  params_ = ParamSet();
  Rng rng(seed);
  encoder_->init_params(params_, rng);
  kernel::init_attention_layer(params_, "ctx.", config_.dim, config_.heads, rng);
  kernel::init_affine(params_, "proj.", config_.dim, kNumTags, rng);
  params_.add("crf.M", Tensor({kNumTags, kNumTags}));
  if (config_.start_bias) params_.add("crf.start", Tensor({kNumTags}));
}

void CrfModel::save(const std::filesystem::path& path) const {
  if (!dynamic_cast<const ToyEncoder*>(encoder_.get())) {
    throw ConfigError("only models using the built-in encoder can be saved");
  }
  save_model(path, kModelKind, params_, config_.to_json());
}

CrfModel CrfModel::load(const std::filesystem::path& path) {
  ModelFile file = load_model(path, kModelKind);
  CrfModel model(CrfModelConfig::from_json(file.config));
  model.params_ = std::move(file.params);
  return model;
}

Tensor encode_segments(const std::vector<std::string>& segment_texts,
                       const SegmentEncoder& encoder, const ParamSet& params) {
  if (segment_texts.empty()) throw InputError("cannot encode an empty segment list");
  const std::size_t d = encoder.dim();
  Tensor h({segment_texts.size(), d});
  for (std::size_t i = 0; i < segment_texts.size(); ++i) {
    Tensor row = encoder.encode(text::tokenize(segment_texts[i]), params);
    if (row.size() != d) {
      throw IntegrityError("encoder returned " + std::to_string(row.size()) +
                           " values for segment " + std::to_string(i) + ", expected " +
                           std::to_string(d));
    }
    for (std::size_t j = 0; j < d; ++j) h(i, j) = row[j];
  }
  return h;
}

Tensor encode_segments(const std::vector<subtitle::Segment>& segments,
                       const SegmentEncoder& encoder, const ParamSet& params) {
  std::vector<std::string> texts;
  texts.reserve(segments.size());
  for (const auto& s : segments) texts.push_back(s.text);
  return encode_segments(texts, encoder, params);
}

Tensor contextualize(const Tensor& h, const CrfModel& model,
                     kernel::AttentionLayerCache* cache) {
  if (h.rank() != 2 || h.cols() != model.config().dim) {
    throw DimensionError("contextualize expects [k x " + std::to_string(model.config().dim) +
                         "], got " + h.shape_string());
  }
  Tensor x = kernel::add(h, kernel::sinusoidal_positions(h.rows(), h.cols()));
  return kernel::attention_layer(x, model.params(), "ctx.", model.config().heads, cache);
}

Tensor emission_scores(const Tensor& u, const CrfModel& model) {
  Tensor l = kernel::affine(u, model.params(), "proj.");
  if (model.config().start_bias) {
    const Tensor& start = model.params().value("crf.start");
    for (std::size_t t = 0; t < kNumTags; ++t) l(0, t) += start[t];
  }
  return l;
}

Tensor segment_emissions(const CrfModel& model, const std::vector<std::string>& segment_texts) {
  Tensor h = encode_segments(segment_texts, model.encoder(), model.params());
  return emission_scores(contextualize(h, model), model);
}

double crf_model_loss(CrfModel& model, const std::vector<std::string>& segment_texts,
                      const TagSequence& gold, std::optional<double> grad_scale) {
  if (gold.size() != segment_texts.size()) {
    throw DimensionError("gold tags (" + std::to_string(gold.size()) + ") do not match " +
                         std::to_string(segment_texts.size()) + " segments");
  }
  const ParamSet& params = model.params();
  Tensor h = encode_segments(segment_texts, model.encoder(), params);
  kernel::AttentionLayerCache cache;
  Tensor u = contextualize(h, model, &cache);
  Tensor l = emission_scores(u, model);
  CrfNllGrad nll = crf_nll_grad(l, params.value("crf.M"), gold);
  if (!grad_scale) return nll.loss;

  ParamSet& p = model.params();
  const double s = *grad_scale;
  kernel::scale_inplace(nll.grad_l, s);
  kernel::scale_inplace(nll.grad_m, s);
  kernel::add_inplace(p.grad_mut("crf.M"), nll.grad_m);
  if (model.config().start_bias) {
    Tensor& g = p.grad_mut("crf.start");
    for (std::size_t t = 0; t < kNumTags; ++t) g[t] += nll.grad_l(0, t);
  }
  Tensor du = kernel::affine_backward(u, nll.grad_l, p, "proj.");
  Tensor dh = kernel::attention_layer_backward(cache, du, p, "ctx.");
  const std::size_t d = model.config().dim;
  for (std::size_t i = 0; i < segment_texts.size(); ++i) {
    Tensor row({1, d});
    for (std::size_t j = 0; j < d; ++j) row(0, j) = dh(i, j);
    model.encoder().backward(text::tokenize(segment_texts[i]), std::nullopt, row, p);
  }
  return nll.loss;
}

TagSequence predict_tags(const CrfModel& model, const std::vector<std::string>& segment_texts) {
  Tensor l = segment_emissions(model, segment_texts);
  return viterbi(l, model.params().value("crf.M")).tags;
}

TaggerTrainConfig TaggerTrainConfig::full_scale_defaults() {
  TaggerTrainConfig c;
  c.adam.learning_rate = 4e-5;
  return c;
}

void validate_corpus(const std::vector<TaggedSequence>& corpus) {
  if (corpus.empty()) throw InputError("training corpus is empty");
  for (const auto& ex : corpus) {
    if (ex.segments.empty()) throw InputError("sequence '" + ex.video_id + "' has no segments");
    if (ex.tags.size() != ex.segments.size()) {
      throw DimensionError("sequence '" + ex.video_id + "' has " +
                           std::to_string(ex.tags.size()) + " tags for " +
                           std::to_string(ex.segments.size()) + " segments");
    }
  }
}

TrainResult train_crf_tagger(CrfModel& model, const std::vector<TaggedSequence>& corpus,
                             const TaggerTrainConfig& config) {
  validate_corpus(corpus);
  TrainResult result;
  result.epoch_loss = detail::run_epochs(
      model.params(), corpus.size(), config.epochs, config.batch_size, config.adam, config.seed,
      [&](std::size_t i, double scale) {
        return crf_model_loss(model, corpus[i].segments, corpus[i].tags, scale);
      });
  result.diagnostic = detail::loss_diagnostic(result.epoch_loss);
  return result;
}

}  // namespace vlf::tagger
