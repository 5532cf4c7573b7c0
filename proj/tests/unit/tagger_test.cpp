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

#include <cmath>
#include <filesystem>
#include <numeric>

#include <gtest/gtest.h>

#include "support/crf_oracle.hpp"
#include "support/synthetic_tags.hpp"
#include "vlf/errors.hpp"
#include "vlf/kernel/gradcheck.hpp"
#include "vlf/kernel/layers.hpp"
#include "vlf/tagger/crf.hpp"
#include "vlf/tagger/crf_model.hpp"
#include "vlf/tagger/prompt.hpp"

namespace vlf::tagger {
namespace {

using kernel::Rng;
using testing::brute_argmax;
using testing::brute_log_partition;
using testing::for_each_sequence;
using testing::random_scores;

constexpr Tag B = Tag::kBegin;
constexpr Tag I = Tag::kInside;
constexpr Tag O = Tag::kOther;

TEST(Tags, NamesRoundTrip) {
  for (Tag t : {B, I, O}) EXPECT_EQ(parse_tag(tag_name(t)), t);
  EXPECT_THROW(parse_tag("X"), IndexError);
  EXPECT_THROW(tag_from_index(3), IndexError);
}

TEST(Tags, RepairLeadingAndOrphanInside) {
  EXPECT_EQ(repair_tags({I, I, O, I, B, I}), (TagSequence{B, I, O, B, B, I}));
  EXPECT_EQ(repair_tags({O, B, I}), (TagSequence{O, B, I}));
}

TEST(Tags, RunsOfBeginInside) {
  auto runs = tag_runs({O, B, I, I, O, B, B});
  ASSERT_EQ(runs.size(), 3u);
  EXPECT_EQ(runs[0], (std::pair<std::size_t, std::size_t>{1, 4}));
  EXPECT_EQ(runs[2], (std::pair<std::size_t, std::size_t>{6, 7}));
}

TEST(CrfScore, SinglePositionHasNoTransition) {
  Tensor l = Tensor::matrix({{0.3, -1.0, 2.0}});
  Tensor m = Tensor::matrix({{5, 5, 5}, {5, 5, 5}, {5, 5, 5}});
  EXPECT_DOUBLE_EQ(crf_score(l, m, {O}), 2.0);
}

TEST(CrfScore, ZeroScoresGiveZero) {
  for_each_sequence(3, [](const TagSequence& y) {
    EXPECT_EQ(crf_score(Tensor({3, 3}), Tensor({3, 3}), y), 0.0);
  });
}

TEST(CrfScore, HandSum) {
  Tensor l = Tensor::matrix({{1, 0, 0}, {0, 2, 0}});
  Tensor m({3, 3});
  m(0, 1) = 0.5;
  EXPECT_DOUBLE_EQ(crf_score(l, m, {B, I}), 3.5);
}

TEST(CrfScore, Errors) {
  Tensor l({2, 3});
  Tensor m({3, 3});
  EXPECT_THROW(crf_score(l, m, {B}), DimensionError);
  EXPECT_THROW(crf_score(l, m, {B, static_cast<Tag>(7)}), IndexError);
}

TEST(CrfPartition, UniformLattice) {
  EXPECT_NEAR(crf_log_partition(Tensor({2, 3}), Tensor({3, 3})), std::log(9.0), 1e-12);
}

TEST(CrfPartition, SingleStepIsLogSumExp) {
  Tensor l = Tensor::matrix({{0.1, 2.0, -3.0}});
  EXPECT_NEAR(crf_log_partition(l, Tensor({3, 3})), kernel::log_sum_exp(l.data()), 1e-14);
}

TEST(CrfPartition, StableForLargeScores) {
  Tensor l = Tensor::matrix({{1000, -1000, 0}, {-1000, 1000, 0}});
  Tensor m({3, 3});
  EXPECT_NEAR(crf_log_partition(l, m), 2000.0, 1e-9);
  l(0, 0) = std::nan("");
  EXPECT_THROW(crf_log_partition(l, m), NumericError);
}

TEST(CrfPartition, MatchesEnumerationAndNormalizes) {
  Rng rng(101);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 1 + rng.below(8);
    Tensor l = random_scores(k, 3, rng, 3.0);
    Tensor m = random_scores(3, 3, rng, 2.0);
    const double z = crf_log_partition(l, m);
    EXPECT_NEAR(z, brute_log_partition(l, m), 1e-8);
    double total = 0.0;
    for_each_sequence(k, [&](const TagSequence& y) { total += std::exp(crf_score(l, m, y) - z); });
    EXPECT_NEAR(total, 1.0, 1e-8);
  }
}

TEST(Viterbi, DecoupledWhenTransitionsVanish) {
  Tensor l = Tensor::matrix({{0, 1, 0}, {3, 1, 2}, {0, 0, 9}});
  EXPECT_EQ(viterbi(l, Tensor({3, 3})).tags, (TagSequence{I, B, O}));
}

TEST(Viterbi, MatchesEnumeration) {
  Rng rng(202);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 1 + rng.below(8);
    Tensor l = random_scores(k, 3, rng, 3.0);
    Tensor m = random_scores(3, 3, rng, 2.0);
    ViterbiResult v = viterbi(l, m);
    EXPECT_EQ(v.tags, brute_argmax(l, m));
    EXPECT_DOUBLE_EQ(v.score, crf_score(l, m, v.tags));
  }
}

TEST(Viterbi, TiesPreferLowestTagAtLatestPosition) {
  EXPECT_EQ(viterbi(Tensor({4, 3}), Tensor({3, 3})).tags, (TagSequence{B, B, B, B}));
  // Two optimal paths, (O, B) and (B, O); the latest position decides.
  Tensor l = Tensor::matrix({{1, 0, 1}, {1, 0, 1}});
  Tensor m({3, 3});
  m(0, 0) = -5;
  m(2, 2) = -5;
  EXPECT_EQ(viterbi(l, m).tags, (TagSequence{O, B}));
  EXPECT_EQ(brute_argmax(l, m), (TagSequence{O, B}));
}

TEST(Viterbi, RowShiftInvariance) {
  Rng rng(303);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t k = 1 + rng.below(6);
    Tensor l = random_scores(k, 3, rng, 3.0);
    Tensor m = random_scores(3, 3, rng, 2.0);
    const std::size_t row = rng.below(k);
    const double c = rng.uniform(-10, 10);
    Tensor shifted = l;
    for (std::size_t t = 0; t < 3; ++t) shifted(row, t) += c;
    EXPECT_EQ(viterbi(shifted, m).tags, viterbi(l, m).tags);
    EXPECT_NEAR(crf_log_partition(shifted, m), crf_log_partition(l, m) + c, 1e-9);
    TagSequence y(k, O);
    EXPECT_NEAR(crf_score(shifted, m, y), crf_score(l, m, y) + c, 1e-12);
  }
}

TEST(CrfNll, PeakedGoldPathHasNearZeroLoss) {
  Tensor l = Tensor::matrix({{50, 0, 0}, {0, 50, 0}, {0, 0, 50}});
  CrfNllGrad g = crf_nll_grad(l, Tensor({3, 3}), {B, I, O});
  EXPECT_GE(g.loss, 0.0);
  EXPECT_LT(g.loss, 1e-20);
}

TEST(CrfNll, MarginalRowsNormalize) {
  Rng rng(7);
  Tensor l = random_scores(5, 3, rng, 2.0);
  Tensor m = random_scores(3, 3, rng, 2.0);
  TagSequence y{B, I, O, O, B};
  CrfNllGrad g = crf_nll_grad(l, m, y);
  for (std::size_t i = 0; i < 5; ++i) {
    double row = 0.0;
    for (std::size_t t = 0; t < 3; ++t) row += g.grad_l(i, t);
    EXPECT_NEAR(row + 1.0, 1.0, 1e-12);
  }
  EXPECT_NEAR(kernel::sum(g.grad_m), 0.0, 1e-12);
}

TEST(CrfNll, GradientsMatchFiniteDifferences) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    kernel::ParamSet p;
    p.add("l", random_scores(4, 3, rng, 2.0));
    p.add("m", random_scores(3, 3, rng, 2.0));
    TagSequence y;
    for (int i = 0; i < 4; ++i) y.push_back(tag_from_index(rng.below(3)));
    CrfNllGrad g = crf_nll_grad(p.value("l"), p.value("m"), y);
    p.grad_mut("l") = g.grad_l;
    p.grad_mut("m") = g.grad_m;
    auto loss = [&](const kernel::ParamSet& q) {
      return crf_nll_grad(q.value("l"), q.value("m"), y).loss;
    };
    EXPECT_LT(kernel::fd_gradcheck(loss, p), 1e-6) << "seed " << seed;
  }
}

CrfModelConfig small_config() {
  CrfModelConfig c;
  c.dim = 8;
  c.heads = 2;
  c.buckets = 64;
  return c;
}

TEST(Encoder, DeterministicAndShaped) {
  CrfModel model(small_config());
  model.init(1);
  Tensor h = encode_segments(std::vector<std::string>{"wash hands", "wash hands"},
                             model.encoder(), model.params());
  ASSERT_EQ(h.shape(), (std::vector<std::size_t>{2, 8}));
  for (std::size_t j = 0; j < 8; ++j) EXPECT_EQ(h(0, j), h(1, j));
  EXPECT_EQ(encode_segments(std::vector<std::string>{"x"}, model.encoder(), model.params()).rows(),
            1u);
  EXPECT_THROW(encode_segments(std::vector<std::string>{}, model.encoder(), model.params()),
               InputError);
}

TEST(Encoder, OrderSensitive) {
  CrfModel model(small_config());
  model.init(2);
  Tensor h = encode_segments(std::vector<std::string>{"a b", "b a"}, model.encoder(),
                             model.params());
  double diff = 0.0;
  for (std::size_t j = 0; j < 8; ++j) diff += std::abs(h(0, j) - h(1, j));
  EXPECT_GT(diff, 1e-3);
}

class WrongSizeEncoder : public ToyEncoder {
 public:
  WrongSizeEncoder() : ToyEncoder(8, 16) {}
  Tensor encode(const text::Tokens& tokens, const ParamSet& params) const override {
    if (tokens.size() > 1) return Tensor({1, 3});
    return ToyEncoder::encode(tokens, params);
  }
};

TEST(Encoder, DimensionDriftIsIntegrityError) {
  WrongSizeEncoder enc;
  ParamSet p;
  Rng rng(0);
  enc.init_params(p, rng);
  EXPECT_THROW(encode_segments(std::vector<std::string>{"a", "a b"}, enc, p), IntegrityError);
}

TEST(Encoder, BackwardMatchesFiniteDifferences) {
  ToyEncoder enc(6, 32, 128);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng(seed);
    ParamSet p;
    enc.init_params(p, rng);
    text::Tokens tokens{"mix", "the", "dough", "<mask>", "now"};
    Tensor target = testing::random_scores(1, 6, rng, 1.0);
    for (std::optional<std::size_t> mask : {std::optional<std::size_t>{},
                                            std::optional<std::size_t>{3}}) {
      auto loss = [&](const ParamSet& q) {
        Tensor s = mask ? enc.encode_masked(tokens, *mask, q) : enc.encode(tokens, q);
        double v = 0.0;
        for (std::size_t j = 0; j < 6; ++j) v += target[j] * s[j];
        return v;
      };
      p.allocate_grads();
      p.zero_grads();
      enc.backward(tokens, mask, target, p);
      EXPECT_LT(kernel::fd_gradcheck(loss, p), 1e-6);
    }
  }
}

TEST(Contextualize, PositionAware) {
  CrfModel model(small_config());
  model.init(3);
  Rng rng(9);
  Tensor h = random_scores(3, 8, rng, 1.0);
  Tensor swapped = h;
  for (std::size_t j = 0; j < 8; ++j) std::swap(swapped(0, j), swapped(1, j));
  Tensor u = contextualize(h, model);
  Tensor v = contextualize(swapped, model);
  double diff = 0.0;
  for (std::size_t j = 0; j < 8; ++j) diff += std::abs(u(0, j) - v(1, j));
  EXPECT_GT(diff, 1e-3);
}

TEST(Contextualize, SinglePositionAttendsToItself) {
  CrfModel model(small_config());
  model.init(4);
  Rng rng(10);
  Tensor h = random_scores(1, 8, rng, 1.0);
  kernel::AttentionLayerCache cache;
  contextualize(h, model, &cache);
  for (const Tensor& probs : cache.attn.probs) EXPECT_DOUBLE_EQ(probs(0, 0), 1.0);
}

TEST(Contextualize, GradientMatchesFiniteDifferences) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    CrfModel model(small_config());
    model.init(seed);
    Rng rng(seed + 100);
    Tensor h = random_scores(3, 8, rng, 1.0);
    Tensor w = random_scores(3, 8, rng, 1.0);
    ParamSet& p = model.params();
    p.allocate_grads();
    p.zero_grads();
    kernel::AttentionLayerCache cache;
    contextualize(h, model, &cache);
    kernel::attention_layer_backward(cache, w, p, "ctx.");
    auto loss = [&](const ParamSet& q) {
      CrfModel m = model;
      m.params() = q;
      Tensor u = contextualize(h, m);
      double v = 0.0;
      for (std::size_t i = 0; i < u.size(); ++i) v += u[i] * w[i];
      return v;
    };
    // Parameters other than ctx.* carry zero gradients and zero sensitivity.
    EXPECT_LT(kernel::fd_gradcheck(loss, p), 1e-4) << "seed " << seed;
  }
}

TEST(Emission, ZeroWeightsBroadcastBias) {
  CrfModel model(small_config());
  model.init(5);
  model.params().value_mut("proj.w").fill(0.0);
  model.params().value_mut("proj.b") = Tensor::vector({1, 2, 3});
  Rng rng(1);
  Tensor l = emission_scores(random_scores(4, 8, rng, 1.0), model);
  ASSERT_EQ(l.shape(), (std::vector<std::size_t>{4, 3}));
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(l(i, 2), 3.0);
}

TEST(CrfModelLoss, EndToEndGradient) {
  for (bool start_bias : {false, true}) {
    CrfModelConfig cfg = small_config();
    cfg.start_bias = start_bias;
    CrfModel model(cfg);
    model.init(11);
    const std::vector<std::string> segs{"begin the cut", "continue cutting", "chatter"};
    const TagSequence gold{B, I, O};
    model.params().allocate_grads();
    model.params().zero_grads();
    crf_model_loss(model, segs, gold, 1.0);
    auto loss = [&](const ParamSet& q) {
      CrfModel m = model;
      m.params() = q;
      return crf_model_loss(m, segs, gold, std::nullopt);
    };
    EXPECT_LT(kernel::fd_gradcheck(loss, model.params()), 1e-4);
  }
}

TEST(CrfTraining, OverfitsSeparableCorpus) {
  auto corpus = testing::separable_tag_corpus(10, 1);
  CrfModel model(small_config());
  model.init(0);
  TaggerTrainConfig cfg;
  cfg.epochs = 200;
  TrainResult r = train_crf_tagger(model, corpus, cfg);
  EXPECT_FALSE(r.diagnostic.has_value());
  std::size_t correct = 0;
  std::size_t total = 0;
  for (const auto& ex : corpus) {
    TagSequence pred = predict_tags(model, ex.segments);
    for (std::size_t i = 0; i < pred.size(); ++i) correct += pred[i] == ex.tags[i];
    total += pred.size();
  }
  EXPECT_EQ(correct, total);
}

TEST(CrfTraining, ZeroEpochsKeepsInitialization) {
  auto corpus = testing::separable_tag_corpus(3, 2);
  CrfModel model(small_config());
  model.init(3);
  const ParamSet before = model.params();
  TaggerTrainConfig cfg;
  cfg.epochs = 0;
  EXPECT_TRUE(train_crf_tagger(model, corpus, cfg).epoch_loss.empty());
  EXPECT_TRUE(model.params().same_values(before));
}

TEST(CrfTraining, DeterministicTrace) {
  auto corpus = testing::separable_tag_corpus(5, 3);
  TaggerTrainConfig cfg;
  cfg.epochs = 5;
  cfg.seed = 9;
  std::vector<double> traces[2];
  for (auto& trace : traces) {
    CrfModel model(small_config());
    model.init(4);
    trace = train_crf_tagger(model, corpus, cfg).epoch_loss;
  }
  EXPECT_EQ(traces[0], traces[1]);
}

TEST(CrfTraining, CorpusValidation) {
  CrfModel model(small_config());
  model.init(0);
  EXPECT_THROW(train_crf_tagger(model, {}, {}), InputError);
  std::vector<TaggedSequence> bad{{"v", {"a", "b"}, {B}}};
  EXPECT_THROW(train_crf_tagger(model, bad, {}), DimensionError);
}

TEST(CrfModelFile, SaveLoadRoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "vlf_tagger_test";
  std::filesystem::create_directories(dir);
  CrfModel model(small_config());
  model.init(6);
  model.save(dir / "crf.ckpt");
  CrfModel loaded = CrfModel::load(dir / "crf.ckpt");
  EXPECT_TRUE(loaded.params().same_values(model.params()));
  const std::vector<std::string> segs{"one", "two three"};
  EXPECT_EQ(segment_emissions(loaded, segs), segment_emissions(model, segs));
  EXPECT_THROW(PromptTagger::load(dir / "crf.ckpt"), SchemaError);
  std::filesystem::remove_all(dir);
}

TEST(Prompt, TableTemplatesAreValid) {
  ASSERT_EQ(builtin_templates().size(), 9u);
  for (const auto& [id, text] : builtin_templates()) {
    PromptConfig c;
    c.template_text = text;
    EXPECT_NO_THROW(c.validate()) << id;
  }
  EXPECT_THROW(template_by_id(10), ConfigError);
}

TEST(Prompt, MaskFirstTemplate) {
  PromptConfig c;
  c.template_text = template_by_id(1);
  PromptInput in = apply_prompt("do this", c);
  EXPECT_EQ(in.text, "<mask> do this");
  EXPECT_EQ(in.mask_index, 0u);
  EXPECT_EQ(in.tokens, (text::Tokens{"<mask>", "do", "this"}));
}

TEST(Prompt, StepTemplateMaskIndex) {
  PromptConfig c;
  c.template_text = template_by_id(4);
  PromptInput in = apply_prompt("stir well", c);
  EXPECT_EQ(in.mask_index, 3u);
  EXPECT_EQ(in.text, "This is the <mask> step where stir well");
}

TEST(Prompt, SeparatorAndTrailingMask) {
  PromptConfig c;
  c.template_text = template_by_id(3);
  PromptInput in = apply_prompt("a b c", c, 4);
  EXPECT_EQ(in.tokens, (text::Tokens{"a", "b", "<sep>", "<mask>"}));
  EXPECT_EQ(in.mask_index, 3u);
}

TEST(Prompt, LiteralMaskWordIsNotAPlaceholder) {
  PromptConfig c;
  c.template_text = "MASK SEG";
  PromptInput in = apply_prompt("wear a MASK", c);
  EXPECT_EQ(in.text, "<mask> wear a MASK");
  EXPECT_EQ(in.mask_index, 0u);
  EXPECT_EQ(std::count(in.tokens.begin(), in.tokens.end(), "<mask>"), 1);
}

TEST(Prompt, InvalidConfigurations) {
  PromptConfig c;
  c.template_text = "SEG only";
  EXPECT_THROW(apply_prompt("x", c), ConfigError);
  c.template_text = "MASK MASK SEG";
  EXPECT_THROW(c.validate(), ConfigError);
  c.template_text = "MASK SEG";
  c.label_words = {"first", "first", "other"};
  EXPECT_THROW(c.validate(), ConfigError);
  c.label_words = {"first step", "next", "other"};
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(PromptDistribution, IdenticalEmbeddingsAreUniform) {
  Tensor emb = Tensor::matrix({{1, 2}, {1, 2}, {1, 2}});
  for (double p : prompt_label_distribution(std::vector<double>{0.3, -4.0}, emb)) {
    EXPECT_NEAR(p, 1.0 / 3.0, 1e-15);
  }
}

TEST(PromptDistribution, AlignedLabelDominates) {
  const std::vector<double> state{0.6, -0.8, 0.0};
  Tensor emb({3, 3});
  for (std::size_t j = 0; j < 3; ++j) emb(0, j) = state[j] * 10.0;
  emb(1, 2) = 1.0;
  emb(2, 0) = 0.8;
  emb(2, 1) = 0.6;
  auto p = prompt_label_distribution(state, emb);
  // logits are (10, 0, 0): p(first) = 1 / (1 + 2 e^-10).
  EXPECT_NEAR(p[0], 1.0 / (1.0 + 2.0 * std::exp(-10.0)), 1e-15);
  EXPECT_GT(p[0], 0.99);
  EXPECT_NEAR(p[0] + p[1] + p[2], 1.0, 1e-12);
}

TEST(PromptDistribution, OrthogonalShiftInvariance) {
  Tensor emb = Tensor::matrix({{1, 0, 0, 2}, {0, 1, 0, -1}, {3, 3, 0, 0}});
  const std::vector<double> state{0.2, -0.4, 0.5, 0.9};
  std::vector<double> shifted = state;
  shifted[2] += 17.0;  // column 2 is zero in every label embedding
  auto a = prompt_label_distribution(state, emb);
  auto b = prompt_label_distribution(shifted, emb);
  for (std::size_t v = 0; v < 3; ++v) EXPECT_NEAR(a[v], b[v], 1e-15);
}

TEST(Verbalize, ArgmaxAndTies) {
  EXPECT_EQ(verbalize(std::vector<double>{0.7, 0.2, 0.1}), B);
  EXPECT_EQ(verbalize(std::vector<double>{0.1, 0.7, 0.2}), I);
  EXPECT_EQ(verbalize(std::vector<double>{0.1, 0.2, 0.7}), O);
  EXPECT_EQ(verbalize(std::vector<double>{1.0 / 3, 1.0 / 3, 1.0 / 3}), O);
  EXPECT_EQ(verbalize(std::vector<double>{0.45, 0.45, 0.1}), O);
}

PromptModelConfig small_prompt_config(int template_id) {
  PromptModelConfig c;
  c.dim = 8;
  c.buckets = 64;
  c.prompt.template_text = template_by_id(template_id);
  return c;
}

TEST(PromptTagger, LossGradientMatchesFiniteDifferences) {
  for (int id : {1, 3, 5}) {
    PromptTagger model(small_prompt_config(id));
    model.init(static_cast<std::uint64_t>(id));
    model.params().allocate_grads();
    model.params().zero_grads();
    model.loss("begin the stretch", I, 1.0);
    auto loss = [&](const ParamSet& q) {
      PromptTagger m = model;
      m.params() = q;
      return m.loss("begin the stretch", I, std::nullopt);
    };
    EXPECT_LT(kernel::fd_gradcheck(loss, model.params()), 1e-5) << "template " << id;
  }
}

TEST(PromptTagger, OverfitsSeparableCorpus) {
  auto corpus = testing::separable_tag_corpus(10, 1);
  PromptTagger model(small_prompt_config(4));
  model.init(0);
  TaggerTrainConfig cfg;
  cfg.epochs = 60;
  TrainResult r = train_prompt_tagger(model, corpus, cfg);
  EXPECT_FALSE(r.diagnostic.has_value());
  for (const auto& ex : corpus) EXPECT_EQ(model.predict_tags(ex.segments), ex.tags);
}

TEST(PromptTagger, SaveLoadRoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "vlf_prompt_test";
  std::filesystem::create_directories(dir);
  PromptTagger model(small_prompt_config(7));
  model.init(8);
  model.save(dir / "p.ckpt");
  PromptTagger loaded = PromptTagger::load(dir / "p.ckpt");
  EXPECT_EQ(loaded.config().prompt.template_text, template_by_id(7));
  EXPECT_EQ(loaded.distribution("hello there"), model.distribution("hello there"));
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace vlf::tagger
