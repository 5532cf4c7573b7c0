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
#include <memory>
#include <optional>
#include <thread>

#include "cli_common.hpp"
#include "vlf/errors.hpp"
#include "vlf/pipeline/classifier.hpp"
#include "vlf/pipeline/corpus.hpp"
#include "vlf/pipeline/dataset.hpp"
#include "vlf/pipeline/records.hpp"
#include "vlf/pipeline/review.hpp"

namespace vlf::cli {

namespace fs = std::filesystem;
using namespace vlf::pipeline;

namespace {

void add_mini_corpus(CLI::App& app, Globals& g) {
  auto out = std::make_shared<fs::path>();
  auto* cmd = app.add_subcommand("mini-corpus", "Write the bundled synthetic ten-video corpus");
  cmd->add_option("--out", *out, "Output directory")->required();
  cmd->callback([out, &g] {
    const MiniCorpusInfo info = write_mini_corpus(*out, g.seed);
    std::cout << "wrote " << info.videos << " videos and " << info.answers << " answers to "
              << out->string() << "\n";
  });
}

struct IngestArgs {
  fs::path manifest;
  fs::path out;
  fs::path classifier;
  fs::path train_docs;
  fs::path save_classifier;
};

void add_ingest(CLI::App& app, Globals&) {
  auto a = std::make_shared<IngestArgs>();
  auto* cmd = app.add_subcommand(
      "ingest", "Validate a manifest and keep the videos classified as medical instructional");
  cmd->add_option("--manifest", a->manifest, "Corpus manifest (JSON list of videos)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", a->out, "Filtered manifest to write")->required();
  auto* clf = cmd->add_option("--classifier", a->classifier, "Trained classifier file")
                  ->check(CLI::ExistingFile);
  auto* docs = cmd->add_option("--train-docs", a->train_docs,
                               "Labelled documents (JSON lines) to train a classifier from")
                   ->check(CLI::ExistingFile);
  cmd->add_option("--save-classifier", a->save_classifier, "Where to save a trained classifier")
      ->needs(docs);
  clf->excludes(docs);
  cmd->callback([a] {
    const std::vector<VideoRecord> videos = load_manifest(a->manifest);
    std::optional<BowClassifier> model;
    if (!a->classifier.empty()) {
      model = BowClassifier::load(a->classifier);
    } else if (!a->train_docs.empty()) {
      model.emplace();
      model->train(load_classifier_docs(a->train_docs));
      if (!a->save_classifier.empty()) model->save(a->save_classifier);
    }
    std::vector<VideoRecord> kept = videos;
    if (model) {
      SelectionResult sel = select_instructional(videos, *model);
      for (const auto& [id, why] : sel.skipped) std::cerr << "skipped " << id << ": " << why << "\n";
      kept = std::move(sel.kept);
    }
    nlohmann::json j = nlohmann::json::array();
    for (const VideoRecord& v : kept) j.push_back(v.to_json());
    write_text_file(a->out, j.dump(2) + "\n");
    std::cout << "kept " << kept.size() << " of " << videos.size() << " videos\n";
  });
}

struct BuildArgs {
  fs::path manifest;
  fs::path tagger_model;
  std::string tagger_mode = "crf";
  fs::path qg_model;
  fs::path out;
  std::size_t segment_budget = 40;
  std::size_t dedup = 3;
  std::size_t workers = 1;
  std::size_t beam = 5;
};

void add_build_dataset(CLI::App& app, Globals& g) {
  auto a = std::make_shared<BuildArgs>();
  auto* cmd = app.add_subcommand("build-dataset", "Generate question/answer triplets for a corpus");
  cmd->add_option("--manifest", a->manifest, "Corpus manifest")->required()->check(CLI::ExistingFile);
  cmd->add_option("--tagger", a->tagger_mode, "Segment tagger kind")
      ->check(CLI::IsMember({"crf", "prompt"}))
      ->capture_default_str();
  cmd->add_option("--tagger-model", a->tagger_model, "Trained tagger")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--qg-model", a->qg_model, "Trained question generator")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", a->out, "Output directory")->required();
  cmd->add_option("--segment-budget", a->segment_budget, "Words per topic segment")
      ->capture_default_str();
  cmd->add_option("--dedup-overlap", a->dedup, "Minimum overlap for cue dedup")->capture_default_str();
  cmd->add_option("--workers", a->workers, "Worker threads")->capture_default_str();
  cmd->add_option("--beam", a->beam, "Beam width for question generation")->capture_default_str();
  cmd->callback([a, &g] {
    const std::vector<VideoRecord> videos = load_manifest(a->manifest);
    const qg::QgModel qg = qg::QgModel::load(a->qg_model);
    const QgQuestionGenerator generator(qg, a->beam);
    DatasetConfig config;
    config.segment_budget = a->segment_budget;
    config.dedup_overlap_words = a->dedup;
    config.workers = a->workers;
    config.seed = g.seed;
    DatasetResult result;
    if (a->tagger_mode == "crf") {
      const tagger::CrfModel model = tagger::CrfModel::load(a->tagger_model);
      result = generate_dataset(videos, CrfSegmentTagger(model), generator, config);
    } else {
      const tagger::PromptTagger model = tagger::PromptTagger::load(a->tagger_model);
      result = generate_dataset(videos, PromptSegmentTagger(model), generator, config);
    }
    write_dataset(a->out, result, videos, config);
    std::cout << result.triplets.size() << " triplets, " << result.filtered.size()
              << " filtered, " << result.failures.size() << " failed videos\n";
  });
}

struct StatsArgs {
  fs::path dataset;
  fs::path manifest;
  std::size_t dedup = 3;
};

void add_stats(CLI::App& app, Globals& g) {
  auto a = std::make_shared<StatsArgs>();
  auto* cmd = app.add_subcommand("stats", "Recompute dataset statistics from a triplet file");
  cmd->add_option("--dataset", a->dataset, "triplets.jsonl or a dataset directory")
      ->required()
      ->check(CLI::ExistingPath);
  cmd->add_option("--manifest", a->manifest, "Corpus manifest")->required()->check(CLI::ExistingFile);
  cmd->add_option("--dedup-overlap", a->dedup, "Minimum overlap for cue dedup")->capture_default_str();
  cmd->callback([a, &g] {
    const fs::path file = fs::is_directory(a->dataset) ? a->dataset / "triplets.jsonl" : a->dataset;
    print_report(dataset_stats(load_triplets(file), load_manifest(a->manifest), a->dedup), g);
  });
}

struct SampleArgs {
  fs::path dataset;
  fs::path manifest;
  std::size_t n = kDefaultReviewSamples;
  std::size_t dedup = 3;
};

void add_sample_review(CLI::App& app, Globals& g) {
  auto a = std::make_shared<SampleArgs>();
  auto* cmd = app.add_subcommand("sample-review", "Draw the human review set into the state directory");
  cmd->add_option("--dataset", a->dataset, "triplets.jsonl or a dataset directory")
      ->required()
      ->check(CLI::ExistingPath);
  cmd->add_option("--manifest", a->manifest, "Corpus manifest")->required()->check(CLI::ExistingFile);
  cmd->add_option("-n,--samples", a->n, "Sample size")->capture_default_str();
  cmd->callback([a, &g] {
    const fs::path file = fs::is_directory(a->dataset) ? a->dataset / "triplets.jsonl" : a->dataset;
    const std::vector<VqaTriplet> triplets = load_triplets(file);
    const auto indices = sample_for_review(triplets.size(), a->n, g.seed);
    const auto samples = build_review_set(triplets, indices, load_manifest(a->manifest), a->dedup);
    save_review_set(g.state_dir / kReviewSetFile, samples);
    std::cout << "wrote " << samples.size() << " samples to "
              << (g.state_dir / kReviewSetFile).string() << "\n";
  });
}

struct ServeArgs {
  std::string host = "127.0.0.1";
  int port = 8080;
  fs::path ui_dir;
};

void add_serve(CLI::App& app, Globals& g) {
  auto a = std::make_shared<ServeArgs>();
  auto* cmd = app.add_subcommand("serve", "Serve the review API and the review UI bundle");
  cmd->add_option("--host", a->host, "Bind address")->capture_default_str();
  cmd->add_option("--port", a->port, "Port; 0 picks a free one")->capture_default_str();
  cmd->add_option("--ui-dir", a->ui_dir, "Built review UI to host at /");
  cmd->callback([a, &g] {
    std::optional<fs::path> ui;
    if (!a->ui_dir.empty()) ui = a->ui_dir;
    ReviewService service(g.state_dir, ui);
    std::exception_ptr failure;
    std::thread server([&] {
      try {
        service.serve(a->host, a->port);
      } catch (...) {
        failure = std::current_exception();
      }
    });
    if (service.wait_until_ready(5000)) {
      std::cout << "listening on http://" << a->host << ":" << service.bound_port() << "\n"
                << std::flush;
    }
    server.join();
    if (failure) std::rethrow_exception(failure);
  });
}

}  // namespace

void register_data_commands(CLI::App& app, Globals& globals) {
  add_mini_corpus(app, globals);
  add_ingest(app, globals);
  add_build_dataset(app, globals);
  add_stats(app, globals);
  add_sample_review(app, globals);
  add_serve(app, globals);
}

}  // namespace vlf::cli
