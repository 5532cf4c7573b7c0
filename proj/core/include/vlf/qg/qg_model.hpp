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

#ifndef VLF_QG_QG_MODEL_HPP_
#define VLF_QG_QG_MODEL_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vlf/kernel/optim.hpp"
#include "vlf/kernel/param_set.hpp"
#include "vlf/subtitle/time_span.hpp"
#include "vlf/subtitle/timeline.hpp"
#include "vlf/text/vocab.hpp"

namespace vlf::qg {

using kernel::ParamSet;
using kernel::Tensor;

struct QgConfig {
  std::size_t dim = 32;
  std::size_t heads = 2;
  std::size_t ffn_hidden = 0;  // 0 means 4 * dim
  std::size_t max_question_len = 19;
  std::size_t max_source_len = 1024;

  // Named size presets selectable from the command line. They differ only
  // in head count and feed-forward width.
  static QgConfig profile(const std::string& name);

  void validate() const;
  nlohmann::json to_json() const;
  static QgConfig from_json(const nlohmann::json& j);
};

// One-layer encoder-decoder. Parameters: src_emb, tgt_emb [V x d];
// enc.* attention layer and enc_ln.*; dec.* decoder layer and dec_ln.*;
// out.w [d x V], out.b [V]. The encoder input is BOS followed by the
// source window; the decoder is teacher-forced on BOS + question and
// predicts question + EOS.
class QgModel {
 public:
  QgModel(QgConfig config, text::Vocab vocab);

  void init(std::uint64_t seed);

  const QgConfig& config() const { return config_; }
  const text::Vocab& vocab() const { return vocab_; }
  ParamSet& params() { return params_; }
  const ParamSet& params() const { return params_; }

  // Writes the checkpoint, its sidecar and the vocab at `path` + ".vocab.json".
  void save(const std::filesystem::path& path) const;
  static QgModel load(const std::filesystem::path& path);

 private:
  QgConfig config_;
  text::Vocab vocab_;
  ParamSet params_;
};

// Words whose spans intersect the window.
text::Tokens answer_window(const subtitle::WordTimeline& timeline, const subtitle::TimeSpan& window);

// Teacher-forced mean token cross-entropy of `question` given `window`.
// When grad_scale is set the gradient of grad_scale * loss is accumulated
// into the model. Throws InputError for an empty or over-long question.
double qg_loss(QgModel& model, const text::Tokens& window, const text::Tokens& question,
               std::optional<double> grad_scale);

struct StateLoss {
  double loss = 0.0;
  Tensor d_states;  // gradient of grad_scale * loss w.r.t. the given rows
};

// As qg_loss, but the source after BOS is a block of externally computed
// [n x d] states instead of embedded tokens. n may be zero.
StateLoss qg_loss_from_states(QgModel& model, const Tensor& states, const text::Tokens& question,
                              std::optional<double> grad_scale);

struct Generation {
  text::Tokens tokens;
  // Sum of token log-probabilities (EOS included when emitted) divided by
  // the number of scored tokens.
  double score = 0.0;
};

// Beam search; beam = 1 is greedy decoding. Stops at EOS or after
// max_question_len tokens. Never returns a sequence scoring below the
// greedy one.
Generation generate(const QgModel& model, const text::Tokens& window, std::size_t beam = 5);

// Normalized score of a given continuation under the model.
double sequence_score(const QgModel& model, const text::Tokens& window,
                      const text::Tokens& question);

struct QgPair {
  text::Tokens window;
  text::Tokens question;
};

struct QgTrainConfig {
  std::size_t epochs = 100;
  std::size_t batch_size = 4;
  kernel::AdamConfig adam{};
  std::uint64_t seed = 0;
};

// Returns the per-epoch mean loss.
std::vector<double> train_qg(QgModel& model, const std::vector<QgPair>& pairs,
                             const QgTrainConfig& config);

}  // namespace vlf::qg

#endif  // VLF_QG_QG_MODEL_HPP_
