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

#include "vlf/tagger/prompt.hpp"

#include <cctype>
#include <fstream>

#include "common/train_loop.hpp"
#include "vlf/common/model_file.hpp"
#include "vlf/errors.hpp"
#include "vlf/kernel/layers.hpp"

namespace vlf::tagger {

namespace {

constexpr const char* kModelKind = "prompt-tagger";

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

const std::map<int, std::string>& builtin_templates() {
  static const std::map<int, std::string> kTemplates = {
      {1, "MASK SEG"},
      {2, "MASK SEP SEG"},
      {3, "SEG SEP MASK"},
      {4, "This is the MASK step where SEG"},
      {5, "This is the MASK step where SEP SEG"},
      {6, "This is the MASK step SEG"},
      {7, "This is the MASK step SEP SEG"},
      {8, "MASK I am going to SEG"},
      {9, "MASK I am going to SEP SEG"},
  };
  return kTemplates;
}

const std::string& template_by_id(int id) {
  const auto& all = builtin_templates();
  auto it = all.find(id);
  if (it == all.end()) throw ConfigError("unknown prompt template id " + std::to_string(id));
  return it->second;
}

std::map<int, std::string> load_templates(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read templates " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError("templates " + path.string() + ": " + e.what());
  }
  if (!j.is_object()) throw SchemaError("templates file must be a JSON object");
  std::map<int, std::string> out;
  for (const auto& [key, value] : j.items()) {
    int id = 0;
    try {
      id = std::stoi(key);
    } catch (const std::exception&) {
      throw SchemaError("template key '" + key + "' is not an integer id");
    }
    if (!value.is_string()) throw SchemaError("template " + key + " is not a string");
    PromptConfig probe;
    probe.template_text = value.get<std::string>();
    probe.validate();
    out[id] = probe.template_text;
  }
  return out;
}

void PromptConfig::validate() const {
  std::size_t masks = 0;
  std::size_t segs = 0;
  std::size_t seps = 0;
  for (const std::string& w : split_ws(template_text)) {
    masks += w == kMaskPlaceholder;
    segs += w == kSegPlaceholder;
    seps += w == kSepPlaceholder;
  }
  if (masks != 1 || segs != 1 || seps > 1) {
    throw ConfigError("template '" + template_text +
                      "' needs exactly one MASK, one SEG and at most one SEP");
  }
  for (std::size_t i = 0; i < kNumTags; ++i) {
    text::Tokens t = text::tokenize(label_words[i]);
    if (t.size() != 1 || t[0] != label_words[i]) {
      throw ConfigError("label word '" + label_words[i] + "' is not a single token");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (label_words[i] == label_words[j]) {
        throw ConfigError("label word '" + label_words[i] + "' is used twice");
      }
    }
  }
}

PromptInput apply_prompt(const std::string& segment_text, const PromptConfig& config,
                         std::size_t max_tokens) {
  config.validate();
  const std::vector<std::string> words = split_ws(config.template_text);
  std::size_t fixed = 0;
  for (const std::string& w : words) {
    if (w == kMaskPlaceholder || w == kSepPlaceholder) {
      ++fixed;
    } else if (w != kSegPlaceholder) {
      fixed += text::tokenize(w).size();
    }
  }
  if (fixed >= max_tokens) throw ConfigError("template alone exceeds the token cap");
  text::Tokens seg_tokens = text::tokenize(segment_text);
  if (seg_tokens.size() > max_tokens - fixed) seg_tokens.resize(max_tokens - fixed);

  PromptInput out;
  for (const std::string& w : words) {
    if (!out.text.empty()) out.text += ' ';
    if (w == kMaskPlaceholder) {
      out.mask_index = out.tokens.size();
      out.tokens.push_back(config.mask_token);
      out.text += config.mask_token;
    } else if (w == kSepPlaceholder) {
      out.tokens.push_back(config.sep_token);
      out.text += config.sep_token;
    } else if (w == kSegPlaceholder) {
      out.tokens.insert(out.tokens.end(), seg_tokens.begin(), seg_tokens.end());
      out.text += segment_text;
    } else {
      for (auto& t : text::tokenize(w)) out.tokens.push_back(std::move(t));
      out.text += w;
    }
  }
  return out;
}

std::vector<double> prompt_label_distribution(std::span<const double> mask_state,
                                              const Tensor& label_emb) {
  if (label_emb.rank() != 2 || label_emb.rows() != kNumTags ||
      label_emb.cols() != mask_state.size()) {
    throw DimensionError("label embeddings " + label_emb.shape_string() +
                         " do not match a mask state of size " +
                         std::to_string(mask_state.size()));
  }
  std::vector<double> logits(kNumTags, 0.0);
  for (std::size_t v = 0; v < kNumTags; ++v) {
    for (std::size_t j = 0; j < mask_state.size(); ++j) logits[v] += label_emb(v, j) * mask_state[j];
  }
  return kernel::softmax(logits);
}

Tag verbalize(std::span<const double> distribution) {
  if (distribution.size() != kNumTags) {
    throw DimensionError("verbalizer expects 3 probabilities, got " +
                         std::to_string(distribution.size()));
  }
  std::size_t best = 0;
  bool tie = false;
  for (std::size_t v = 1; v < kNumTags; ++v) {
    if (distribution[v] > distribution[best]) {
      best = v;
      tie = false;
    } else if (distribution[v] == distribution[best]) {
      tie = true;
    }
  }
  return tie ? Tag::kOther : tag_from_index(best);
}

nlohmann::json PromptModelConfig::to_json() const {
  return {{"dim", dim},
          {"buckets", buckets},
          {"max_tokens", max_tokens},
          {"template", prompt.template_text},
          {"label_words", prompt.label_words},
          {"mask_token", prompt.mask_token},
          {"sep_token", prompt.sep_token},
          {"encoder", "toy"}};
}

PromptModelConfig PromptModelConfig::from_json(const nlohmann::json& j) {
  PromptModelConfig c;
  try {
    c.dim = j.at("dim").get<std::size_t>();
    c.buckets = j.at("buckets").get<std::size_t>();
    c.max_tokens = j.at("max_tokens").get<std::size_t>();
    c.prompt.template_text = j.at("template").get<std::string>();
    c.prompt.label_words = j.at("label_words").get<std::array<std::string, kNumTags>>();
    c.prompt.mask_token = j.at("mask_token").get<std::string>();
    c.prompt.sep_token = j.at("sep_token").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("prompt model config: ") + e.what());
  }
  c.prompt.validate();
  return c;
}

PromptTagger::PromptTagger(PromptModelConfig config, std::shared_ptr<const SegmentEncoder> encoder)
    : config_(std::move(config)), encoder_(std::move(encoder)) {
  config_.prompt.validate();
  if (!encoder_) {
    encoder_ = std::make_shared<ToyEncoder>(config_.dim, config_.buckets, config_.max_tokens);
  }
  if (encoder_->dim() != config_.dim) {
    throw ConfigError("encoder dimension does not match the prompt model dimension");
  }
}

void PromptTagger::init(std::uint64_t seed) {
  params_ = ParamSet();
  kernel::Rng rng(seed);
  encoder_->init_params(params_, rng);
  params_.add("prompt.label_emb", kernel::normal_tensor({kNumTags, config_.dim}, 0.1, rng));
}

std::vector<double> PromptTagger::distribution(const std::string& segment_text) const {
  PromptInput in = apply_prompt(segment_text, config_.prompt, encoder_->max_tokens());
  Tensor state = encoder_->encode_masked(in.tokens, in.mask_index, params_);
  return prompt_label_distribution(state.data(), params_.value("prompt.label_emb"));
}

Tag PromptTagger::predict(const std::string& segment_text) const {
  return verbalize(distribution(segment_text));
}

TagSequence PromptTagger::predict_tags(const std::vector<std::string>& segment_texts) const {
  TagSequence out;
  out.reserve(segment_texts.size());
  for (const auto& s : segment_texts) out.push_back(predict(s));
  return out;
}

double PromptTagger::loss(const std::string& segment_text, Tag gold,
                          std::optional<double> grad_scale) {
  PromptInput in = apply_prompt(segment_text, config_.prompt, encoder_->max_tokens());
  Tensor state = encoder_->encode_masked(in.tokens, in.mask_index, params_);
  const Tensor& emb = params_.value("prompt.label_emb");
  std::vector<double> logits(kNumTags, 0.0);
  for (std::size_t v = 0; v < kNumTags; ++v) {
    for (std::size_t j = 0; j < config_.dim; ++j) logits[v] += emb(v, j) * state[j];
  }
  kernel::XentResult xent = kernel::softmax_xent(logits, tag_index(gold));
  if (!grad_scale) return xent.loss;
  Tensor& g_emb = params_.grad_mut("prompt.label_emb");
  Tensor d_state({1, config_.dim});
  for (std::size_t v = 0; v < kNumTags; ++v) {
    const double dz = xent.grad[v] * *grad_scale;
    for (std::size_t j = 0; j < config_.dim; ++j) {
      g_emb(v, j) += dz * state[j];
      d_state(0, j) += dz * emb(v, j);
    }
  }
  encoder_->backward(in.tokens, in.mask_index, d_state, params_);
  return xent.loss;
}

void PromptTagger::save(const std::filesystem::path& path) const {
  if (!dynamic_cast<const ToyEncoder*>(encoder_.get())) {
    throw ConfigError("only models using the built-in encoder can be saved");
  }
  save_model(path, kModelKind, params_, config_.to_json());
}

PromptTagger PromptTagger::load(const std::filesystem::path& path) {
  ModelFile file = load_model(path, kModelKind);
  PromptTagger model(PromptModelConfig::from_json(file.config));
  model.params_ = std::move(file.params);
  return model;
}

TrainResult train_prompt_tagger(PromptTagger& model, const std::vector<TaggedSequence>& corpus,
                                const TaggerTrainConfig& config) {
  validate_corpus(corpus);
  std::vector<std::pair<const std::string*, Tag>> items;
  for (const auto& ex : corpus) {
    for (std::size_t i = 0; i < ex.segments.size(); ++i) {
      items.emplace_back(&ex.segments[i], ex.tags[i]);
    }
  }
  TrainResult result;
  result.epoch_loss = detail::run_epochs(
      model.params(), items.size(), config.epochs, config.batch_size, config.adam, config.seed,
      [&](std::size_t i, double scale) {
        return model.loss(*items[i].first, items[i].second, scale);
      });
  result.diagnostic = detail::loss_diagnostic(result.epoch_loss);
  return result;
}

}  // namespace vlf::tagger
