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

#ifndef VLF_TAGGER_PROMPT_HPP_
#define VLF_TAGGER_PROMPT_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vlf/tagger/crf_model.hpp"
#include "vlf/tagger/encoder.hpp"
#include "vlf/tagger/tags.hpp"

namespace vlf::tagger {

// Template placeholders, matched as whole whitespace-separated words.
inline constexpr std::string_view kMaskPlaceholder = "MASK";
inline constexpr std::string_view kSegPlaceholder = "SEG";
inline constexpr std::string_view kSepPlaceholder = "SEP";

// The nine prompt templates, keyed 1..9.
const std::map<int, std::string>& builtin_templates();

// Throws ConfigError for ids outside 1..9.
const std::string& template_by_id(int id);

// Reads {"<id>": "<template>", ...}. Throws SchemaError on malformed input
// and ConfigError on an invalid template.
std::map<int, std::string> load_templates(const std::filesystem::path& path);

struct PromptConfig {
  std::string template_text = "MASK SEG";
  // Label word for B-Seg, I-Seg and O, in tag order.
  std::array<std::string, kNumTags> label_words{"first", "next", "other"};
  std::string mask_token = "<mask>";
  std::string sep_token = "<sep>";

  // Throws ConfigError unless the template holds exactly one MASK, exactly
  // one SEG and at most one SEP, and the label words are distinct single
  // tokens under the tokenizer.
  void validate() const;
};

struct PromptInput {
  std::string text;           // template with placeholders substituted
  text::Tokens tokens;        // what the encoder sees
  std::size_t mask_index = 0; // position of the mask token in `tokens`
};

// Substitutes the segment and the mask token into the template. Segment
// tokens are truncated so the prompt fits within `max_tokens`.
PromptInput apply_prompt(const std::string& segment_text, const PromptConfig& config,
                         std::size_t max_tokens = 128);

// Softmax over label_emb (rows in tag order) dotted with the mask state.
std::vector<double> prompt_label_distribution(std::span<const double> mask_state,
                                              const Tensor& label_emb);

// Tag of the most probable label word; any tie involving the maximum
// yields O.
Tag verbalize(std::span<const double> distribution);

struct PromptModelConfig {
  std::size_t dim = 32;
  std::size_t buckets = 2048;
  std::size_t max_tokens = 128;
  PromptConfig prompt;

  nlohmann::json to_json() const;
  static PromptModelConfig from_json(const nlohmann::json& j);
};

// Encoder parameters plus the label table prompt.label_emb [3 x d].
class PromptTagger {
 public:
  explicit PromptTagger(PromptModelConfig config,
                        std::shared_ptr<const SegmentEncoder> encoder = nullptr);

  void init(std::uint64_t seed);

  const PromptModelConfig& config() const { return config_; }
  const SegmentEncoder& encoder() const { return *encoder_; }
  ParamSet& params() { return params_; }
  const ParamSet& params() const { return params_; }

  std::vector<double> distribution(const std::string& segment_text) const;
  Tag predict(const std::string& segment_text) const;
  TagSequence predict_tags(const std::vector<std::string>& segment_texts) const;

  // Cross-entropy of the gold label word; accumulates the gradient of
  // grad_scale * loss when grad_scale is set.
  double loss(const std::string& segment_text, Tag gold, std::optional<double> grad_scale);

  void save(const std::filesystem::path& path) const;
  static PromptTagger load(const std::filesystem::path& path);

 private:
  PromptModelConfig config_;
  std::shared_ptr<const SegmentEncoder> encoder_;
  ParamSet params_;
};

// Trains on every (segment, tag) pair of the corpus independently. The
// loss trace is the mean per-segment loss of each epoch.
TrainResult train_prompt_tagger(PromptTagger& model, const std::vector<TaggedSequence>& corpus,
                                const TaggerTrainConfig& config);

}  // namespace vlf::tagger

#endif  // VLF_TAGGER_PROMPT_HPP_
