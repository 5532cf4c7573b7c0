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

#include "cli_common.hpp"
#include "vlf/errors.hpp"
#include "vlf/metrics/agreement.hpp"
#include "vlf/metrics/temporal.hpp"
#include "vlf/metrics/text_metrics.hpp"
#include "vlf/pipeline/review.hpp"
#include "vlf/tagger/tags.hpp"
#include "vlf/text/tokenizer.hpp"

namespace vlf::cli {

namespace fs = std::filesystem;

namespace {

// Input rows per metric:
//   iou        {pred_start_s, pred_end_s, gold_start_s, gold_end_s}
//   wf1        {predicted: [tag], gold: [tag]}
//   bleu/rouge {candidate, reference}
//   agreement  one judgment per line
struct EvalArgs {
  std::string metric;
  fs::path input;
  std::vector<std::size_t> windows{1, 2, 3};
  std::string window_semantics = "w-1";
  std::size_t samples = 0;
};

tagger::TagSequence tags_of(const nlohmann::json& j) {
  tagger::TagSequence out;
  for (const auto& t : j) out.push_back(tagger::parse_tag(t.get<std::string>()));
  return out;
}

metrics::EvalReport evaluate(const EvalArgs& a) {
  if (a.metric == "iou") {
    std::vector<metrics::SpanPair> pairs;
    for_each_jsonl(a.input, [&](const nlohmann::json& j) {
      pairs.push_back({{j.at("pred_start_s").get<double>(), j.at("pred_end_s").get<double>()},
                       {j.at("gold_start_s").get<double>(), j.at("gold_end_s").get<double>()}});
    });
    return metrics::localization_report(pairs);
  }
  if (a.metric == "wf1") {
    std::vector<metrics::TagPair> pairs;
    for_each_jsonl(a.input, [&](const nlohmann::json& j) {
      pairs.emplace_back(tags_of(j.at("predicted")), tags_of(j.at("gold")));
    });
    return metrics::segmentation_report(pairs, a.windows,
                                        a.window_semantics == "w"
                                            ? metrics::WindowSemantics::kRadiusW
                                            : metrics::WindowSemantics::kRadiusWMinusOne);
  }
  if (a.metric == "bleu" || a.metric == "rouge") {
    std::vector<std::pair<text::Tokens, text::Tokens>> pairs;
    for_each_jsonl(a.input, [&](const nlohmann::json& j) {
      pairs.emplace_back(text::tokenize(j.at("candidate").get<std::string>()),
                         text::tokenize(j.at("reference").get<std::string>()));
    });
    metrics::EvalReport full = metrics::generation_report(pairs);
    metrics::EvalReport out = full;
    out.values.clear();
    const std::string prefix = a.metric == "bleu" ? "BLEU" : "ROUGE";
    for (const auto& [k, v] : full.values) {
      if (k.rfind(prefix, 0) == 0) out.values[k] = v;
    }
    return out;
  }
  std::optional<std::size_t> sample_count;
  if (a.samples > 0) sample_count = a.samples;
  return metrics::agreement_table(pipeline::load_judgments(a.input), sample_count);
}

}  // namespace

void register_eval_commands(CLI::App& app, Globals& g) {
  auto a = std::make_shared<EvalArgs>();
  auto* cmd = app.add_subcommand("eval", "Score predictions or judgments");
  cmd->add_option("--metric", a->metric, "Metric family")
      ->required()
      ->check(CLI::IsMember({"iou", "wf1", "bleu", "rouge", "agreement"}));
  cmd->add_option("--input", a->input, "Input file (JSON lines)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--windows", a->windows, "Windows for wf1")->capture_default_str();
  cmd->add_option("--window-semantics", a->window_semantics,
                  "Boundary tolerance: radius w-1 or radius w")
      ->check(CLI::IsMember({"w-1", "w"}))
      ->capture_default_str();
  cmd->add_option("--samples", a->samples, "Review set size for agreement coverage");
  cmd->callback([a, &g] {
    const metrics::EvalReport report = evaluate(*a);
    if (a->metric == "agreement" && !g.json) {
      std::cout << metrics::render_agreement(report, "unanimous") << "\n"
                << metrics::render_agreement(report, "majority");
    } else {
      print_report(report, g);
    }
  });
}

}  // namespace vlf::cli
