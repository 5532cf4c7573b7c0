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

#include <iostream>
#include <map>
#include <memory>

#include "cli_common.hpp"
#include "vlf/errors.hpp"
#include "vlf/kernel/rng.hpp"
#include "vlf/localizer/rc_model.hpp"
#include "vlf/pipeline/corpus.hpp"
#include "vlf/pipeline/dataset.hpp"
#include "vlf/qg/qg_model.hpp"
#include "vlf/subtitle/segments.hpp"
#include "vlf/tagger/crf_model.hpp"
#include "vlf/tagger/prompt.hpp"
#include "vlf/text/tokenizer.hpp"

namespace vlf::cli {

namespace fs = std::filesystem;
using namespace vlf::pipeline;

namespace {

void print_trace(const std::vector<double>& trace) {
  if (trace.empty()) return;
  std::cout << "loss " << trace.front() << " -> " << trace.back() << " over " << trace.size()
            << " epochs\n";
}

struct TrainTaggerArgs {
  fs::path corpus;
  fs::path out;
  std::string mode = "crf";
  std::size_t dim = 32;
  std::size_t epochs = 200;
  std::size_t batch = 4;
  double lr = 4e-3;
  int template_id = 0;
  bool start_bias = false;
};

void add_train_tagger(CLI::App& app, Globals& g) {
  auto a = std::make_shared<TrainTaggerArgs>();
  auto* cmd = app.add_subcommand("train-tagger", "Train the CRF or prompt segment tagger");
  cmd->add_option("--corpus", a->corpus, "Tagging annotations (JSON lines)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", a->out, "Model file")->required();
  cmd->add_option("--mode", a->mode, "Tagger kind")
      ->check(CLI::IsMember({"crf", "prompt"}))
      ->capture_default_str();
  cmd->add_option("--dim", a->dim, "Hidden width")->capture_default_str();
  cmd->add_option("--epochs", a->epochs, "Training epochs")->capture_default_str();
  cmd->add_option("--batch-size", a->batch, "Sequences per update")->capture_default_str();
  cmd->add_option("--lr", a->lr, "Adam learning rate")->capture_default_str();
  cmd->add_option("--template", a->template_id, "Built-in prompt template id (1-9)")
      ->check(CLI::Range(1, 9));
  cmd->add_flag("--start-bias", a->start_bias, "Add a trainable first-segment bias (CRF)");
  cmd->callback([a, &g] {
    const auto corpus = load_tagging_corpus(a->corpus);
    tagger::TaggerTrainConfig tc;
    tc.epochs = a->epochs;
    tc.batch_size = a->batch;
    tc.adam.learning_rate = a->lr;
    tc.seed = g.seed;
    tagger::TrainResult result;
    if (a->mode == "crf") {
      tagger::CrfModelConfig mc;
      mc.dim = a->dim;
      mc.start_bias = a->start_bias;
      tagger::CrfModel model(mc);
      model.init(g.seed);
      result = tagger::train_crf_tagger(model, corpus, tc);
      model.save(a->out);
    } else {
      tagger::PromptModelConfig mc;
      mc.dim = a->dim;
      if (a->template_id != 0) mc.prompt.template_text = tagger::template_by_id(a->template_id);
      tagger::PromptTagger model(mc);
      model.init(g.seed);
      result = tagger::train_prompt_tagger(model, corpus, tc);
      model.save(a->out);
    }
    print_trace(result.epoch_loss);
    if (result.diagnostic) std::cerr << "warning: " << *result.diagnostic << "\n";
  });
}

struct TagArgs {
  fs::path manifest;
  fs::path model;
  std::string mode = "crf";
  fs::path out;
  std::size_t segment_budget = 40;
  std::size_t dedup = 3;
};

void add_tag(CLI::App& app, Globals&) {
  auto a = std::make_shared<TagArgs>();
  auto* cmd = app.add_subcommand("tag", "Segment and tag every video of a manifest");
  cmd->add_option("--manifest", a->manifest, "Corpus manifest")->required()->check(CLI::ExistingFile);
  cmd->add_option("--model", a->model, "Trained tagger")->required()->check(CLI::ExistingFile);
  cmd->add_option("--mode", a->mode, "Tagger kind")
      ->check(CLI::IsMember({"crf", "prompt"}))
      ->capture_default_str();
  cmd->add_option("--out", a->out, "Output file (JSON lines)")->required();
  cmd->add_option("--segment-budget", a->segment_budget, "Words per topic segment")
      ->capture_default_str();
  cmd->add_option("--dedup-overlap", a->dedup, "Minimum overlap for cue dedup")->capture_default_str();
  cmd->callback([a] {
    std::unique_ptr<tagger::CrfModel> crf;
    std::unique_ptr<tagger::PromptTagger> prompt;
    std::unique_ptr<SegmentTagger> tagger;
    if (a->mode == "crf") {
      crf = std::make_unique<tagger::CrfModel>(tagger::CrfModel::load(a->model));
      tagger = std::make_unique<CrfSegmentTagger>(*crf);
    } else {
      prompt = std::make_unique<tagger::PromptTagger>(tagger::PromptTagger::load(a->model));
      tagger = std::make_unique<PromptSegmentTagger>(*prompt);
    }
    std::vector<nlohmann::json> rows;
    for (const VideoRecord& video : load_manifest(a->manifest)) {
      const auto timeline = video_timeline(video, a->dedup);
      const auto segments = subtitle::align_timestamps(
          subtitle::topic_segment(timeline, subtitle::PunctuationSegmenter(a->segment_budget)),
          timeline);
      std::vector<std::string> texts;
      for (const auto& s : segments) texts.push_back(s.text);
      const tagger::TagSequence tags = tagger->tag(texts);
      nlohmann::json segs = nlohmann::json::array();
      for (std::size_t i = 0; i < segments.size(); ++i) {
        segs.push_back({{"start_s", segments[i].span.start_s},
                        {"end_s", segments[i].span.end_s},
                        {"text", segments[i].text},
                        {"tag", std::string(tagger::tag_name(tags[i]))}});
      }
      rows.push_back({{"video_id", video.video_id}, {"segments", segs}});
    }
    write_jsonl(a->out, rows);
    std::cout << "tagged " << rows.size() << " videos\n";
  });
}

qg::QgConfig qg_config(const std::string& profile, std::size_t dim) {
  qg::QgConfig c = qg::QgConfig::profile(profile);
  if (c.ffn_hidden != 0) c.ffn_hidden = c.ffn_hidden / c.dim * dim;
  c.dim = dim;
  return c;
}

struct TrainQgArgs {
  fs::path pairs;
  fs::path out;
  std::string profile = "bart-style";
  std::size_t dim = 32;
  std::size_t epochs = 100;
  std::size_t batch = 4;
  double lr = 4e-3;
};

void add_train_qg(CLI::App& app, Globals& g) {
  auto a = std::make_shared<TrainQgArgs>();
  auto* cmd = app.add_subcommand("train-qg", "Train the question generator");
  cmd->add_option("--pairs", a->pairs, "Window/question pairs (JSON lines)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", a->out, "Model file")->required();
  cmd->add_option("--profile", a->profile, "Size preset")
      ->check(CLI::IsMember({"bart-style", "t5-style"}))
      ->capture_default_str();
  cmd->add_option("--dim", a->dim, "Hidden width")->capture_default_str();
  cmd->add_option("--epochs", a->epochs, "Training epochs")->capture_default_str();
  cmd->add_option("--batch-size", a->batch, "Pairs per update")->capture_default_str();
  cmd->add_option("--lr", a->lr, "Adam learning rate")->capture_default_str();
  cmd->callback([a, &g] {
    const auto pairs = load_qg_pairs(a->pairs);
    std::vector<text::Tokens> corpus;
    for (const auto& p : pairs) {
      corpus.push_back(p.window);
      corpus.push_back(p.question);
    }
    qg::QgModel model(qg_config(a->profile, a->dim), text::Vocab::build(corpus));
    model.init(g.seed);
    qg::QgTrainConfig tc;
    tc.epochs = a->epochs;
    tc.batch_size = a->batch;
    tc.adam.learning_rate = a->lr;
    tc.seed = g.seed;
    print_trace(qg::train_qg(model, pairs, tc));
    model.save(a->out);
  });
}

struct QgenArgs {
  fs::path model;
  std::string window;
  std::size_t beam = 5;
};

void add_qgen(CLI::App& app, Globals&) {
  auto a = std::make_shared<QgenArgs>();
  auto* cmd = app.add_subcommand("qgen", "Generate a question for a subtitle window");
  cmd->add_option("--model", a->model, "Trained question generator")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--window", a->window, "Subtitle text of the answer window")->required();
  cmd->add_option("--beam", a->beam, "Beam width; 1 is greedy")->capture_default_str();
  cmd->callback([a] {
    const qg::QgModel model = qg::QgModel::load(a->model);
    const qg::Generation gen = qg::generate(model, text::tokenize(a->window), a->beam);
    std::cout << text::join(gen.tokens) << "\n";
  });
}

struct LocalizerArgs {
  fs::path manifest;
  fs::path annotations;
  fs::path out;
  bool ccal = false;
  std::string fusion = "none";
  std::string qg_profile = "bart-style";
  double qg_weight = 1.0;
  std::size_t dim = 32;
  std::size_t epochs = 10;
  std::size_t batch = 2;
  double lr = 4e-3;
  std::size_t max_len = 1024;
  std::size_t dedup = 3;
};

void add_train_localizer(CLI::App& app, Globals& g) {
  auto a = std::make_shared<LocalizerArgs>();
  auto* cmd = app.add_subcommand("train-localizer", "Train the answer span localizer");
  cmd->add_option("--manifest", a->manifest, "Corpus manifest")->required()->check(CLI::ExistingFile);
  cmd->add_option("--annotations", a->annotations, "Localization annotations (JSON lines)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", a->out, "Model file")->required();
  cmd->add_flag("--ccal", a->ccal, "Add the question-generation loss on the predicted span");
  cmd->add_option("--fusion", a->fusion, "Visual fusion")
      ->check(CLI::IsMember({"none", "global", "per-word"}))
      ->capture_default_str();
  cmd->add_option("--qg", a->qg_profile, "Question generator size preset used with --ccal")
      ->check(CLI::IsMember({"bart-style", "t5-style"}))
      ->capture_default_str();
  cmd->add_option("--qg-weight", a->qg_weight, "Weight of the question loss")->capture_default_str();
  cmd->add_option("--dim", a->dim, "Hidden width")->capture_default_str();
  cmd->add_option("--epochs", a->epochs, "Training epochs")->capture_default_str();
  cmd->add_option("--batch-size", a->batch, "Items per update")->capture_default_str();
  cmd->add_option("--lr", a->lr, "Adam learning rate")->capture_default_str();
  cmd->add_option("--max-len", a->max_len, "Packed input length")->capture_default_str();
  cmd->add_option("--dedup-overlap", a->dedup, "Minimum overlap for cue dedup")->capture_default_str();
  cmd->callback([a, &g] {
    const auto videos = load_manifest(a->manifest);
    const auto items = load_localizer_items(a->annotations, videos, a->dedup);
    if (items.empty()) throw InputError("no localization annotations");
    localizer::RcConfig rc;
    rc.dim = a->dim;
    rc.max_len = a->max_len;
    rc.fusion = localizer::parse_fusion_mode(a->fusion);
    if (rc.fusion != localizer::FusionMode::kNone) {
      if (!items.front().track) throw InputError("fusion needs feature tracks for every video");
      rc.feature_dim = items.front().track->dim();
    }
    const text::Vocab vocab = localizer::build_localizer_vocab(items);
    localizer::RcModel model(rc, vocab);
    model.init(g.seed);
    localizer::LocalizerTrainConfig tc;
    tc.epochs = a->epochs;
    tc.batch_size = a->batch;
    tc.adam.learning_rate = a->lr;
    tc.seed = g.seed;
    tc.qg_weight = a->qg_weight;
    localizer::LocalizerTrainResult result;
    if (a->ccal) {
      qg::QgModel qgm(qg_config(a->qg_profile, a->dim), vocab);
      qgm.init(kernel::derive_seed(g.seed, 1));
      result = localizer::train_ccal(model, qgm, items, tc);
      qgm.save(a->out.string() + ".qg");
    } else {
      result = localizer::train_rc(model, items, tc);
    }
    model.save(a->out);
    if (!result.step_loss.empty()) {
      std::cout << "loss " << result.step_loss.front() << " -> " << result.step_loss.back()
                << " over " << result.step_loss.size() << " steps\n";
    }
    if (result.skipped > 0) {
      std::cerr << "skipped " << result.skipped << " item visits with gold spans past max-len\n";
    }
  });
}

struct LocalizeArgs {
  fs::path manifest;
  fs::path annotations;
  fs::path model;
  fs::path out;
  std::size_t dedup = 3;
};

void add_localize(CLI::App& app, Globals&) {
  auto a = std::make_shared<LocalizeArgs>();
  auto* cmd = app.add_subcommand("localize", "Predict answer spans for localization questions");
  cmd->add_option("--manifest", a->manifest, "Corpus manifest")->required()->check(CLI::ExistingFile);
  cmd->add_option("--annotations", a->annotations, "Localization questions (JSON lines)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--model", a->model, "Trained localizer")->required()->check(CLI::ExistingFile);
  cmd->add_option("--out", a->out, "Predictions (JSON lines)")->required();
  cmd->add_option("--dedup-overlap", a->dedup, "Minimum overlap for cue dedup")->capture_default_str();
  cmd->callback([a] {
    const localizer::RcModel model = localizer::RcModel::load(a->model);
    const auto items = load_localizer_items(a->annotations, load_manifest(a->manifest), a->dedup);
    std::vector<nlohmann::json> rows;
    for (const auto& item : items) {
      const localizer::Localization loc = localizer::localize(model, item);
      rows.push_back({{"video_id", item.video_id},
                      {"question_id", item.question_id},
                      {"pred_start_s", loc.span.start_s},
                      {"pred_end_s", loc.span.end_s},
                      {"gold_start_s", item.gold.start_s},
                      {"gold_end_s", item.gold.end_s}});
    }
    write_jsonl(a->out, rows);
    std::cout << "localized " << rows.size() << " questions\n";
  });
}

}  // namespace

void register_model_commands(CLI::App& app, Globals& globals) {
  add_train_tagger(app, globals);
  add_tag(app, globals);
  add_train_qg(app, globals);
  add_qgen(app, globals);
  add_train_localizer(app, globals);
  add_localize(app, globals);
}

}  // namespace vlf::cli
