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

#include "vlf/qg/qg_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "common/train_loop.hpp"
#include "vlf/common/model_file.hpp"
#include "vlf/errors.hpp"
#include "vlf/kernel/attention.hpp"
#include "vlf/kernel/layers.hpp"

namespace vlf::qg {

using kernel::Rng;
using text::Vocab;

namespace {

constexpr const char* kModelKind = "question-generator";

std::filesystem::path vocab_path(const std::filesystem::path& checkpoint) {
  std::filesystem::path p = checkpoint;
  p += ".vocab.json";
  return p;
}

struct SourceCache {
  std::vector<std::size_t> ids;  // embedded ids; BOS only for external sources
  std::size_t external_rows = 0;
  kernel::AttentionLayerCache enc;
  kernel::LayerNormCache enc_ln;
};

struct DecoderCache {
  std::vector<std::size_t> in_ids;
  kernel::DecoderLayerCache dec;
  kernel::LayerNormCache ln;
  Tensor z;
};

// Memory rows for BOS + source ids.
Tensor encode_ids(const QgModel& model, std::vector<std::size_t> ids, SourceCache* cache) {
  const std::size_t cap = model.config().max_source_len;
  if (ids.size() > cap) ids.resize(cap);
  const ParamSet& p = model.params();
  Tensor rows = kernel::embed(p.value("src_emb"), ids);
  kernel::add_inplace(rows, kernel::sinusoidal_positions(rows.rows(), rows.cols()));
  kernel::AttentionLayerCache* enc = cache ? &cache->enc : nullptr;
  kernel::LayerNormCache* ln = cache ? &cache->enc_ln : nullptr;
  Tensor h = kernel::attention_layer(rows, p, "enc.", model.config().heads, enc);
  if (cache) cache->ids = std::move(ids);
  return kernel::layer_norm(h, p, "enc_ln.", ln);
}

Tensor encode_states(const QgModel& model, const Tensor& states, SourceCache* cache) {
  const std::size_t d = model.config().dim;
  if (states.size() > 0 && (states.rank() != 2 || states.cols() != d)) {
    throw DimensionError("QG source states must be [n x " + std::to_string(d) + "], got " +
                         states.shape_string());
  }
  const std::size_t n = states.size() == 0 ? 0 : states.rows();
  const std::size_t kept = std::min(n, model.config().max_source_len - 1);
  const ParamSet& p = model.params();
  Tensor rows({kept + 1, d});
  const Tensor& emb = p.value("src_emb");
  for (std::size_t j = 0; j < d; ++j) rows(0, j) = emb(Vocab::kBosId, j);
  for (std::size_t i = 0; i < kept; ++i) {
    for (std::size_t j = 0; j < d; ++j) rows(i + 1, j) = states(i, j);
  }
  kernel::add_inplace(rows, kernel::sinusoidal_positions(rows.rows(), d));
  kernel::AttentionLayerCache* enc = cache ? &cache->enc : nullptr;
  kernel::LayerNormCache* ln = cache ? &cache->enc_ln : nullptr;
  Tensor h = kernel::attention_layer(rows, p, "enc.", model.config().heads, enc);
  if (cache) {
    cache->ids = {Vocab::kBosId};
    cache->external_rows = kept;
  }
  return kernel::layer_norm(h, p, "enc_ln.", ln);
}

Tensor decode_logits(const QgModel& model, const Tensor& memory,
                     const std::vector<std::size_t>& in_ids, DecoderCache* cache) {
  const ParamSet& p = model.params();
  Tensor y = kernel::embed(p.value("tgt_emb"), in_ids);
  kernel::add_inplace(y, kernel::sinusoidal_positions(y.rows(), y.cols()));
  Tensor h = kernel::decoder_layer(y, memory, p, "dec.", model.config().heads,
                                   cache ? &cache->dec : nullptr);
  Tensor z = kernel::layer_norm(h, p, "dec_ln.", cache ? &cache->ln : nullptr);
  Tensor logits = kernel::affine(z, p, "out.");
  if (cache) {
    cache->in_ids = in_ids;
    cache->z = std::move(z);
  }
  return logits;
}

std::vector<std::size_t> source_ids(const QgModel& model, const text::Tokens& window) {
  std::vector<std::size_t> ids{Vocab::kBosId};
  for (std::size_t id : model.vocab().encode(window)) ids.push_back(id);
  return ids;
}

std::vector<std::size_t> question_ids(const QgModel& model, const text::Tokens& question) {
  if (question.empty()) throw InputError("question must not be empty");
  if (question.size() > model.config().max_question_len) {
    throw InputError("question has " + std::to_string(question.size()) +
                     " tokens, more than the maximum " +
                     std::to_string(model.config().max_question_len));
  }
  return model.vocab().encode(question);
}

// Loss over teacher-forced targets; on request backpropagates down to the
// encoder input rows and returns their gradient.
double teacher_forced(QgModel& model, const Tensor& memory, SourceCache& src,
                      const std::vector<std::size_t>& q, std::optional<double> grad_scale,
                      Tensor* d_rows) {
  std::vector<std::size_t> in_ids{Vocab::kBosId};
  in_ids.insert(in_ids.end(), q.begin(), q.end());
  std::vector<std::size_t> targets = q;
  targets.push_back(Vocab::kEosId);
  DecoderCache dc;
  Tensor logits = decode_logits(model, memory, in_ids, &dc);
  const std::size_t n = targets.size();
  Tensor dlogits({n, logits.cols()});
  double loss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    kernel::XentResult r = kernel::softmax_xent(logits.row(i), targets[i]);
    loss += r.loss;
    for (std::size_t v = 0; v < r.grad.size(); ++v) dlogits(i, v) = r.grad[v];
  }
  loss /= static_cast<double>(n);
  if (!grad_scale) return loss;

  ParamSet& p = model.params();
  kernel::scale_inplace(dlogits, *grad_scale / static_cast<double>(n));
  Tensor dz = kernel::affine_backward(dc.z, dlogits, p, "out.");
  Tensor dh = kernel::layer_norm_backward(dc.ln, dz, p, "dec_ln.");
  kernel::DecoderLayerGrads g = kernel::decoder_layer_backward(dc.dec, dh, p, "dec.");
  kernel::embed_backward(p.grad_mut("tgt_emb"), dc.in_ids, g.d_input);
  Tensor d_enc = kernel::layer_norm_backward(src.enc_ln, g.d_memory, p, "enc_ln.");
  *d_rows = kernel::attention_layer_backward(src.enc, d_enc, p, "enc.");
  return loss;
}

}  // namespace

QgConfig QgConfig::profile(const std::string& name) {
  QgConfig c;
  if (name == "bart-style") {
    c.heads = 2;
    c.ffn_hidden = 0;
  } else if (name == "t5-style") {
    c.heads = 4;
    c.ffn_hidden = 2 * c.dim;
  } else {
    throw ConfigError("unknown question generator profile '" + name +
                      "' (expected bart-style or t5-style)");
  }
  return c;
}

void QgConfig::validate() const {
  if (dim == 0 || heads == 0 || dim % heads != 0) {
    throw ConfigError("QG dim must be a positive multiple of the head count");
  }
  if (max_question_len < 5) throw ConfigError("max question length must be at least 5");
  if (max_source_len < 2) throw ConfigError("max source length must be at least 2");
}

nlohmann::json QgConfig::to_json() const {
  return {{"dim", dim},
          {"heads", heads},
          {"ffn_hidden", ffn_hidden},
          {"max_question_len", max_question_len},
          {"max_source_len", max_source_len}};
}

QgConfig QgConfig::from_json(const nlohmann::json& j) {
  QgConfig c;
  try {
    c.dim = j.at("dim").get<std::size_t>();
    c.heads = j.at("heads").get<std::size_t>();
    c.ffn_hidden = j.at("ffn_hidden").get<std::size_t>();
    c.max_question_len = j.at("max_question_len").get<std::size_t>();
    c.max_source_len = j.at("max_source_len").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("QG config: ") + e.what());
  }
  c.validate();
  return c;
}

QgModel::QgModel(QgConfig config, text::Vocab vocab)
    : config_(config), vocab_(std::move(vocab)) {
  config_.validate();
}

void QgModel::init(std::uint64_t seed) {
  params_ = ParamSet();
  Rng rng(seed);
  const std::size_t d = config_.dim;
  const std::size_t v = vocab_.size();
  params_.add("src_emb", kernel::normal_tensor({v, d}, 0.1, rng));
  params_.add("tgt_emb", kernel::normal_tensor({v, d}, 0.1, rng));
  kernel::init_attention_layer(params_, "enc.", d, config_.heads, rng, config_.ffn_hidden);
  kernel::init_layer_norm(params_, "enc_ln.", d);
  kernel::init_decoder_layer(params_, "dec.", d, config_.heads, rng, config_.ffn_hidden);
  kernel::init_layer_norm(params_, "dec_ln.", d);
  kernel::init_affine(params_, "out.", d, v, rng);
}

void QgModel::save(const std::filesystem::path& path) const {
  save_model(path, kModelKind, params_, config_.to_json());
  vocab_.save(vocab_path(path));
}

QgModel QgModel::load(const std::filesystem::path& path) {
  ModelFile file = load_model(path, kModelKind);
  QgModel model(QgConfig::from_json(file.config), Vocab::load(vocab_path(path)));
  if (file.params.value("out.b").size() != model.vocab_.size()) {
    throw SchemaError("QG checkpoint and vocab disagree on vocabulary size");
  }
  model.params_ = std::move(file.params);
  return model;
}

text::Tokens answer_window(const subtitle::WordTimeline& timeline,
                           const subtitle::TimeSpan& window) {
  text::Tokens out;
  for (std::size_t i : subtitle::words_in_window(timeline, window)) {
    out.push_back(timeline.words[i]);
  }
  return out;
}

double qg_loss(QgModel& model, const text::Tokens& window, const text::Tokens& question,
               std::optional<double> grad_scale) {
  const std::vector<std::size_t> q = question_ids(model, question);
  SourceCache src;
  Tensor memory = encode_ids(model, source_ids(model, window), &src);
  Tensor d_rows;
  const double loss = teacher_forced(model, memory, src, q, grad_scale, &d_rows);
  if (grad_scale) kernel::embed_backward(model.params().grad_mut("src_emb"), src.ids, d_rows);
  return loss;
}

StateLoss qg_loss_from_states(QgModel& model, const Tensor& states, const text::Tokens& question,
                              std::optional<double> grad_scale) {
  const std::vector<std::size_t> q = question_ids(model, question);
  SourceCache src;
  Tensor memory = encode_states(model, states, &src);
  Tensor d_rows;
  StateLoss out;
  out.loss = teacher_forced(model, memory, src, q, grad_scale, &d_rows);
  if (!grad_scale) return out;
  const std::size_t d = model.config().dim;
  Tensor& g_emb = model.params().grad_mut("src_emb");
  for (std::size_t j = 0; j < d; ++j) g_emb(Vocab::kBosId, j) += d_rows(0, j);
  if (states.size() > 0) {
    out.d_states = Tensor({states.rows(), d});
    for (std::size_t i = 0; i < src.external_rows; ++i) {
      for (std::size_t j = 0; j < d; ++j) out.d_states(i, j) = d_rows(i + 1, j);
    }
  }
  return out;
}

namespace {

struct Hypothesis {
  std::vector<std::size_t> ids;
  double logprob = 0.0;
  bool finished = false;

  double normalized() const {
    const std::size_t n = ids.size() + (finished ? 1 : 0);
    return n == 0 ? 0.0 : logprob / static_cast<double>(n);
  }
};

bool allowed_output(std::size_t id) {
  return id != Vocab::kPadId && id != Vocab::kBosId && id != Vocab::kMaskId &&
         id != Vocab::kSepId;
}

std::vector<double> next_log_probs(const QgModel& model, const Tensor& memory,
                                   const std::vector<std::size_t>& prefix) {
  std::vector<std::size_t> in_ids{Vocab::kBosId};
  in_ids.insert(in_ids.end(), prefix.begin(), prefix.end());
  Tensor logits = decode_logits(model, memory, in_ids, nullptr);
  std::span<const double> last = logits.row(logits.rows() - 1);
  std::vector<double> masked(last.begin(), last.end());
  for (std::size_t v = 0; v < masked.size(); ++v) {
    if (!allowed_output(v)) masked[v] = -std::numeric_limits<double>::infinity();
  }
  const double lse = kernel::log_sum_exp(masked);
  for (double& x : masked) x -= lse;
  return masked;
}

Hypothesis greedy(const QgModel& model, const Tensor& memory) {
  Hypothesis h;
  while (h.ids.size() < model.config().max_question_len) {
    std::vector<double> lp = next_log_probs(model, memory, h.ids);
    const std::size_t best =
        static_cast<std::size_t>(std::max_element(lp.begin(), lp.end()) - lp.begin());
    h.logprob += lp[best];
    if (best == Vocab::kEosId) {
      h.finished = true;
      break;
    }
    h.ids.push_back(best);
  }
  return h;
}

bool better(const Hypothesis& a, const Hypothesis& b) {
  if (a.normalized() != b.normalized()) return a.normalized() > b.normalized();
  return a.ids < b.ids;
}

}  // namespace

Generation generate(const QgModel& model, const text::Tokens& window, std::size_t beam) {
  if (beam == 0) throw ConfigError("beam size must be at least 1");
  const Tensor memory = encode_ids(model, source_ids(model, window), nullptr);
  Hypothesis best = greedy(model, memory);
  if (beam > 1) {
    std::vector<Hypothesis> live{Hypothesis{}};
    std::vector<Hypothesis> done;
    for (std::size_t step = 0; step < model.config().max_question_len && !live.empty(); ++step) {
      std::vector<Hypothesis> candidates;
      for (const Hypothesis& h : live) {
        std::vector<double> lp = next_log_probs(model, memory, h.ids);
        std::vector<std::size_t> order(lp.size());
        for (std::size_t v = 0; v < order.size(); ++v) order[v] = v;
        const std::size_t take = std::min(beam, order.size());
        std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take),
                          order.end(), [&](std::size_t a, std::size_t b) {
                            return lp[a] != lp[b] ? lp[a] > lp[b] : a < b;
                          });
        for (std::size_t r = 0; r < take; ++r) {
          const std::size_t v = order[r];
          if (!std::isfinite(lp[v])) continue;
          Hypothesis next = h;
          next.logprob += lp[v];
          if (v == Vocab::kEosId) {
            next.finished = true;
          } else {
            next.ids.push_back(v);
          }
          candidates.push_back(std::move(next));
        }
      }
      std::stable_sort(candidates.begin(), candidates.end(),
                       [](const Hypothesis& a, const Hypothesis& b) {
                         if (a.logprob != b.logprob) return a.logprob > b.logprob;
                         return a.ids < b.ids;
                       });
      live.clear();
      for (Hypothesis& c : candidates) {
        if (live.size() >= beam) break;
        if (c.finished) {
          done.push_back(std::move(c));
        } else {
          live.push_back(std::move(c));
        }
      }
    }
    for (Hypothesis& h : live) done.push_back(std::move(h));
    for (const Hypothesis& h : done) {
      if (better(h, best)) best = h;
    }
  }
  Generation out;
  for (std::size_t id : best.ids) out.tokens.push_back(model.vocab().token(id));
  out.score = best.normalized();
  return out;
}

double sequence_score(const QgModel& model, const text::Tokens& window,
                      const text::Tokens& question) {
  const Tensor memory = encode_ids(model, source_ids(model, window), nullptr);
  Hypothesis h;
  for (std::size_t id : model.vocab().encode(question)) {
    h.logprob += next_log_probs(model, memory, h.ids)[id];
    h.ids.push_back(id);
  }
  if (h.ids.size() < model.config().max_question_len) {
    h.logprob += next_log_probs(model, memory, h.ids)[Vocab::kEosId];
    h.finished = true;
  }
  return h.normalized();
}

std::vector<double> train_qg(QgModel& model, const std::vector<QgPair>& pairs,
                             const QgTrainConfig& config) {
  if (pairs.empty()) throw InputError("question generation corpus is empty");
  return detail::run_epochs(model.params(), pairs.size(), config.epochs, config.batch_size,
                            config.adam, config.seed, [&](std::size_t i, double scale) {
                              return qg_loss(model, pairs[i].window, pairs[i].question, scale);
                            });
}

}  // namespace vlf::qg
