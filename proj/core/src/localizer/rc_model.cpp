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

#include "vlf/localizer/rc_model.hpp"

#include <limits>
#include <numeric>
#include <set>

#include "vlf/common/model_file.hpp"
#include "vlf/errors.hpp"
#include "vlf/kernel/attention.hpp"
#include "vlf/kernel/layers.hpp"

namespace vlf::localizer {

using kernel::Rng;

namespace {

constexpr const char* kModelKind = "span-localizer";

std::filesystem::path vocab_path(const std::filesystem::path& checkpoint) {
  std::filesystem::path p = checkpoint;
  p += ".vocab.json";
  return p;
}

struct RcPass {
  PackedInput input;
  std::vector<std::size_t> ids;
  kernel::AttentionLayerCache enc;
  bool fused = false;
  Tensor vis_rows;
  FusionCache fusion;
  Tensor f;  // states read by the heads
  Tensor start_raw;
  Tensor end_raw;
};

RcPass forward(const RcModel& model, PackedInput input, const subtitle::WordTimeline& timeline,
               const FrameFeatureTrack* track) {
  const RcConfig& cfg = model.config();
  const ParamSet& p = model.params();
  RcPass pass;
  pass.input = std::move(input);
  pass.ids = model.vocab().encode(pass.input.tokens);
  Tensor x = kernel::embed(p.value("emb"), pass.ids);
  kernel::add_inplace(x, kernel::sinusoidal_positions(x.rows(), x.cols()));
  Tensor h = kernel::attention_layer(x, p, "enc.", cfg.heads, &pass.enc);
  if (cfg.fusion == FusionMode::kNone) {
    pass.f = std::move(h);
  } else {
    if (!track || track->n_frames() == 0) {
      throw InputError("vision fusion is enabled but the item has no feature track");
    }
    pass.fused = true;
    if (cfg.fusion == FusionMode::kGlobal) {
      pass.vis_rows = mean_pool(*track);
    } else {
      const Tensor global = mean_pool(*track);
      pass.vis_rows = Tensor({pass.input.size(), track->dim()});
      for (std::size_t i = 0; i < pass.input.size(); ++i) {
        const Tensor row =
            pass.input.is_word(i)
                ? align_frames(*track,
                               timeline.spans[static_cast<std::size_t>(pass.input.word_map[i])])
                : global;
        for (std::size_t j = 0; j < track->dim(); ++j) pass.vis_rows(i, j) = row[j];
      }
    }
    Tensor v = model.vision()->project(pass.vis_rows, p);
    pass.f = fuse_vision(h, v, p, "fuse.", &pass.fusion);
  }
  pass.start_raw = kernel::affine(pass.f, p, "start.");
  pass.end_raw = kernel::affine(pass.f, p, "end.");
  return pass;
}

void backward(RcModel& model, const RcPass& pass, const Tensor& d_start, const Tensor& d_end,
              const Tensor* d_f_extra) {
  ParamSet& p = model.params();
  Tensor d_f = kernel::affine_backward(pass.f, d_start, p, "start.");
  kernel::add_inplace(d_f, kernel::affine_backward(pass.f, d_end, p, "end."));
  if (d_f_extra) kernel::add_inplace(d_f, *d_f_extra);
  Tensor d_h;
  if (pass.fused) {
    FusionGrads g = fuse_vision_backward(pass.fusion, d_f, p, "fuse.");
    model.vision()->project_backward(pass.vis_rows, g.dv, p);
    d_h = std::move(g.dh);
  } else {
    d_h = std::move(d_f);
  }
  Tensor d_x = kernel::attention_layer_backward(pass.enc, d_h, p, "enc.");
  kernel::embed_backward(p.grad_mut("emb"), pass.ids, d_x);
}

SpanLogits masked_logits(const RcPass& pass) {
  const std::size_t n = pass.input.size();
  SpanLogits out{std::vector<double>(n, -std::numeric_limits<double>::infinity()),
                 std::vector<double>(n, -std::numeric_limits<double>::infinity())};
  for (std::size_t i = pass.input.first_word_position(); i < n; ++i) {
    out.start[i] = pass.start_raw[i];
    out.end[i] = pass.end_raw[i];
  }
  return out;
}

struct SliceLoss {
  double loss = 0.0;
  Tensor d_start;  // [n x 1], zero outside the subtitle slice
  Tensor d_end;
};

SliceLoss slice_loss(const RcPass& pass, std::size_t gold_i, std::size_t gold_j, double scale) {
  const std::size_t n = pass.input.size();
  const std::size_t first = pass.input.first_word_position();
  std::vector<double> s(pass.start_raw.data().begin() + static_cast<std::ptrdiff_t>(first),
                        pass.start_raw.data().end());
  std::vector<double> e(pass.end_raw.data().begin() + static_cast<std::ptrdiff_t>(first),
                        pass.end_raw.data().end());
  kernel::XentResult xs = kernel::softmax_xent(s, gold_i - first);
  kernel::XentResult xe = kernel::softmax_xent(e, gold_j - first);
  SliceLoss out{xs.loss + xe.loss, Tensor({n, 1}), Tensor({n, 1})};
  for (std::size_t k = 0; k < s.size(); ++k) {
    out.d_start[first + k] = scale * xs.grad[k];
    out.d_end[first + k] = scale * xe.grad[k];
  }
  return out;
}

struct Prepared {
  const LocalizerItem* item;
  PackedInput input;
  std::size_t gold_i;
  std::size_t gold_j;
};

std::vector<Prepared> prepare(const RcModel& model, const std::vector<const LocalizerItem*>& batch,
                              std::size_t& skipped) {
  std::vector<Prepared> out;
  for (const LocalizerItem* item : batch) {
    if (!item->timeline) throw InputError("localizer item '" + item->question_id + "' has no timeline");
    PackedInput input = pack_input(item->question, *item->timeline, model.config().max_len);
    auto gold = gold_positions(input, *item->timeline, item->gold);
    if (!gold) {
      ++skipped;
      continue;
    }
    out.push_back({item, std::move(input), gold->first, gold->second});
  }
  return out;
}

template <typename Step>
LocalizerTrainResult run_localizer_epochs(const std::vector<LocalizerItem>& items,
                                          const LocalizerTrainConfig& config, Step&& step) {
  if (items.empty()) throw InputError("localizer training set is empty");
  if (config.batch_size == 0) throw ConfigError("batch size must be positive");
  LocalizerTrainResult result;
  Rng rng(config.seed);
  std::vector<std::size_t> order(items.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    rng.shuffle(order);
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t end = std::min(order.size(), start + config.batch_size);
      std::vector<const LocalizerItem*> batch;
      for (std::size_t b = start; b < end; ++b) batch.push_back(&items[order[b]]);
      StepReport r = step(batch);
      result.skipped += r.skipped;
      if (r.used > 0) result.step_loss.push_back(r.loss);
    }
  }
  return result;
}

}  // namespace

std::string fusion_mode_name(FusionMode mode) {
  switch (mode) {
    case FusionMode::kNone:
      return "none";
    case FusionMode::kGlobal:
      return "global";
    case FusionMode::kPerWord:
      return "per-word";
  }
  throw ConfigError("invalid fusion mode");
}

FusionMode parse_fusion_mode(const std::string& name) {
  if (name == "none") return FusionMode::kNone;
  if (name == "global") return FusionMode::kGlobal;
  if (name == "per-word") return FusionMode::kPerWord;
  throw ConfigError("unknown fusion mode '" + name + "' (expected none, global or per-word)");
}

void RcConfig::validate() const {
  if (dim == 0 || heads == 0 || dim % heads != 0) {
    throw ConfigError("RC dim must be a positive multiple of the head count");
  }
  if (max_len < 2) throw ConfigError("max packed length must be at least 2");
  if (max_span == 0) throw ConfigError("max span must be positive");
  if (fusion != FusionMode::kNone && (feature_dim == 0 || vision_dim == 0)) {
    throw ConfigError("vision dimensions must be positive when fusion is on");
  }
}

nlohmann::json RcConfig::to_json() const {
  return {{"dim", dim},
          {"heads", heads},
          {"max_len", max_len},
          {"max_span", max_span},
          {"fusion", fusion_mode_name(fusion)},
          {"feature_dim", feature_dim},
          {"vision_dim", vision_dim},
          {"identity_fusion_init", identity_fusion_init}};
}

RcConfig RcConfig::from_json(const nlohmann::json& j) {
  RcConfig c;
  try {
    c.dim = j.at("dim").get<std::size_t>();
    c.heads = j.at("heads").get<std::size_t>();
    c.max_len = j.at("max_len").get<std::size_t>();
    c.max_span = j.at("max_span").get<std::size_t>();
    c.fusion = parse_fusion_mode(j.at("fusion").get<std::string>());
    c.feature_dim = j.at("feature_dim").get<std::size_t>();
    c.vision_dim = j.at("vision_dim").get<std::size_t>();
    c.identity_fusion_init = j.at("identity_fusion_init").get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("RC config: ") + e.what());
  }
  c.validate();
  return c;
}

RcModel::RcModel(RcConfig config, text::Vocab vocab, std::shared_ptr<const VisionEncoder> vision)
    : config_(config), vocab_(std::move(vocab)), vision_(std::move(vision)) {
  config_.validate();
  if (config_.fusion != FusionMode::kNone) {
    if (!vision_) {
      vision_ = std::make_shared<ToyVisionEncoder>(config_.feature_dim, config_.vision_dim);
    }
    if (vision_->feature_dim() != config_.feature_dim || vision_->out_dim() != config_.vision_dim) {
      throw ConfigError("vision encoder dimensions do not match the RC config");
    }
  }
}

void RcModel::init(std::uint64_t seed) {
  params_ = ParamSet();
  Rng rng(seed);
  const std::size_t d = config_.dim;
  params_.add("emb", kernel::normal_tensor({vocab_.size(), d}, 0.1, rng));
  kernel::init_attention_layer(params_, "enc.", d, config_.heads, rng);
  if (config_.fusion != FusionMode::kNone) {
    vision_->init_params(params_, rng);
    init_fusion(params_, "fuse.", d, config_.vision_dim, rng, config_.identity_fusion_init);
  }
  kernel::init_affine(params_, "start.", d, 1, rng);
  kernel::init_affine(params_, "end.", d, 1, rng);
}

void RcModel::save(const std::filesystem::path& path) const {
  if (vision_ && !dynamic_cast<const ToyVisionEncoder*>(vision_.get())) {
    throw ConfigError("only models using the built-in vision encoder can be saved");
  }
  save_model(path, kModelKind, params_, config_.to_json());
  vocab_.save(vocab_path(path));
}

RcModel RcModel::load(const std::filesystem::path& path) {
  ModelFile file = load_model(path, kModelKind);
  RcModel model(RcConfig::from_json(file.config), text::Vocab::load(vocab_path(path)));
  if (file.params.value("emb").rows() != model.vocab_.size()) {
    throw SchemaError("RC checkpoint and vocab disagree on vocabulary size");
  }
  model.params_ = std::move(file.params);
  return model;
}

SpanLogits span_logits(const RcModel& model, const PackedInput& input,
                       const subtitle::WordTimeline& timeline, const FrameFeatureTrack* track) {
  return masked_logits(forward(model, input, timeline, track));
}

Localization localize(const RcModel& model, const LocalizerItem& item) {
  if (!item.timeline) throw InputError("localizer item '" + item.question_id + "' has no timeline");
  PackedInput input = pack_input(item.question, *item.timeline, model.config().max_len);
  RcPass pass = forward(model, input, *item.timeline, item.track.get());
  SpanLogits logits = masked_logits(pass);
  auto [i, j] = decode_span(logits.start, logits.end, model.config().max_span);
  return {i, j, span_to_timestamps(i, j, pass.input, *item.timeline, item.duration_s)};
}

std::optional<double> rc_loss(RcModel& model, const LocalizerItem& item,
                              std::optional<double> grad_scale) {
  std::size_t skipped = 0;
  std::vector<Prepared> prep = prepare(model, {&item}, skipped);
  if (prep.empty()) return std::nullopt;
  RcPass pass = forward(model, std::move(prep[0].input), *item.timeline, item.track.get());
  SliceLoss sl = slice_loss(pass, prep[0].gold_i, prep[0].gold_j, grad_scale.value_or(0.0));
  if (grad_scale) backward(model, pass, sl.d_start, sl.d_end, nullptr);
  return sl.loss;
}

StepReport rc_train_step(RcModel& model, const std::vector<const LocalizerItem*>& batch,
                         kernel::OptimState& state) {
  StepReport report;
  std::vector<Prepared> prep = prepare(model, batch, report.skipped);
  report.used = prep.size();
  if (prep.empty()) return report;
  const double scale = 1.0 / static_cast<double>(prep.size());
  model.params().zero_grads();
  double total = 0.0;
  for (Prepared& pr : prep) {
    RcPass pass = forward(model, std::move(pr.input), *pr.item->timeline, pr.item->track.get());
    SliceLoss sl = slice_loss(pass, pr.gold_i, pr.gold_j, scale);
    backward(model, pass, sl.d_start, sl.d_end, nullptr);
    total += sl.loss;
  }
  kernel::adam_step(model.params(), state);
  report.loss = total * scale;
  return report;
}

StepReport ccal_step(RcModel& rc, qg::QgModel& qg, const std::vector<const LocalizerItem*>& batch,
                     kernel::OptimState& rc_state, kernel::OptimState& qg_state,
                     double qg_weight) {
  if (qg.config().dim != rc.config().dim) {
    throw ConfigError("CCAL needs the question generator width to match the RC width");
  }
  StepReport report;
  std::vector<Prepared> prep = prepare(rc, batch, report.skipped);
  report.used = prep.size();
  if (prep.empty()) return report;
  const double scale = 1.0 / static_cast<double>(prep.size());
  rc.params().zero_grads();
  qg.params().zero_grads();
  double total = 0.0;
  for (Prepared& pr : prep) {
    RcPass pass = forward(rc, std::move(pr.input), *pr.item->timeline, pr.item->track.get());
    SliceLoss sl = slice_loss(pass, pr.gold_i, pr.gold_j, scale);
    SpanLogits logits = masked_logits(pass);
    auto [i, j] = decode_span(logits.start, logits.end, rc.config().max_span);
    const std::size_t d = rc.config().dim;
    Tensor states({j - i + 1, d});
    for (std::size_t r = i; r <= j; ++r) {
      for (std::size_t c = 0; c < d; ++c) states(r - i, c) = pass.f(r, c);
    }
    text::Tokens target = pr.item->question;
    if (target.size() > qg.config().max_question_len) target.resize(qg.config().max_question_len);
    qg::StateLoss g = qg::qg_loss_from_states(qg, states, target, qg_weight * scale);
    Tensor d_f({pass.f.rows(), d});
    for (std::size_t r = i; r <= j; ++r) {
      for (std::size_t c = 0; c < d; ++c) d_f(r, c) = g.d_states(r - i, c);
    }
    backward(rc, pass, sl.d_start, sl.d_end, &d_f);
    total += sl.loss + qg_weight * g.loss;
  }
  kernel::adam_step(rc.params(), rc_state);
  kernel::adam_step(qg.params(), qg_state);
  report.loss = total * scale;
  return report;
}

LocalizerTrainResult train_rc(RcModel& model, const std::vector<LocalizerItem>& items,
                              const LocalizerTrainConfig& config) {
  model.params().allocate_grads();
  kernel::OptimState state(model.params(), config.adam);
  return run_localizer_epochs(items, config, [&](const std::vector<const LocalizerItem*>& batch) {
    return rc_train_step(model, batch, state);
  });
}

LocalizerTrainResult train_ccal(RcModel& rc, qg::QgModel& qg,
                                const std::vector<LocalizerItem>& items,
                                const LocalizerTrainConfig& config) {
  rc.params().allocate_grads();
  qg.params().allocate_grads();
  kernel::OptimState rc_state(rc.params(), config.adam);
  kernel::OptimState qg_state(qg.params(), config.adam);
  return run_localizer_epochs(items, config, [&](const std::vector<const LocalizerItem*>& batch) {
    return ccal_step(rc, qg, batch, rc_state, qg_state, config.qg_weight);
  });
}

text::Vocab build_localizer_vocab(const std::vector<LocalizerItem>& items) {
  std::vector<text::Tokens> corpus;
  std::set<const subtitle::WordTimeline*> seen;
  for (const LocalizerItem& item : items) {
    corpus.push_back(item.question);
    if (item.timeline && seen.insert(item.timeline.get()).second) {
      text::Tokens words;
      for (const std::string& w : item.timeline->words) words.push_back(packed_word(w));
      corpus.push_back(std::move(words));
    }
  }
  return text::Vocab::build(corpus);
}

}  // namespace vlf::localizer
