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

#include "vlf/metrics/agreement.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>

#include "vlf/errors.hpp"

namespace vlf::metrics {

namespace {

double percent(std::size_t part, std::size_t whole) {
  return whole ? 100.0 * static_cast<double>(part) / static_cast<double>(whole) : 0.0;
}

}  // namespace

std::string criterion_name(Criterion c) {
  switch (c) {
    case Criterion::kInstructional:
      return "instructional";
    case Criterion::kSegmentAnswer:
      return "segment_answer";
    case Criterion::kQuestionQuality:
      return "question_quality";
    case Criterion::kAlignment:
      return "alignment";
  }
  throw SchemaError("invalid criterion");
}

Criterion parse_criterion(const std::string& name) {
  for (Criterion c : kAllCriteria) {
    if (criterion_name(c) == name) return c;
  }
  throw SchemaError("unknown criterion '" + name + "'");
}

const std::vector<std::string>& criterion_labels(Criterion c) {
  static const std::vector<std::string> yes_no = {"Yes", "No"};
  static const std::vector<std::string> yes_no_partial = {"Yes", "No", "Partial"};
  static const std::vector<std::string> quality = {"Correct", "Incorrect", "Partial Correct"};
  switch (c) {
    case Criterion::kInstructional:
      return yes_no;
    case Criterion::kSegmentAnswer:
    case Criterion::kAlignment:
      return yes_no_partial;
    case Criterion::kQuestionQuality:
      return quality;
  }
  throw SchemaError("invalid criterion");
}

bool label_allowed(Criterion c, const std::string& label) {
  const auto& labels = criterion_labels(c);
  return std::find(labels.begin(), labels.end(), label) != labels.end();
}

nlohmann::json Judgment::to_json() const {
  return {{"sample_id", sample_id},
          {"annotator_id", annotator_id},
          {"criterion", criterion_name(criterion)},
          {"label", label},
          {"timestamp", timestamp}};
}

Judgment Judgment::from_json(const nlohmann::json& j) {
  Judgment out;
  try {
    out.sample_id = j.at("sample_id").get<std::string>();
    out.annotator_id = j.at("annotator_id").get<std::string>();
    out.criterion = parse_criterion(j.at("criterion").get<std::string>());
    out.label = j.at("label").get<std::string>();
    out.timestamp = j.value("timestamp", std::string());
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("judgment: ") + e.what());
  }
  if (out.sample_id.empty() || out.annotator_id.empty()) {
    throw SchemaError("judgment needs a sample id and an annotator id");
  }
  if (!label_allowed(out.criterion, out.label)) {
    throw SchemaError("label '" + out.label + "' is not allowed for criterion " +
                      criterion_name(out.criterion));
  }
  return out;
}

EvalReport agreement_table(const std::vector<Judgment>& judgments,
                           std::optional<std::size_t> sample_count) {
  EvalReport r;
  r.name = "agreement";
  std::set<std::string> samples;
  for (Criterion c : kAllCriteria) {
    const std::string cname = criterion_name(c);
    const auto& labels = criterion_labels(c);
    std::map<std::string, std::size_t> raw;
    // sample -> annotator -> label; a later judgment by the same annotator wins.
    std::map<std::string, std::map<std::string, std::string>> by_sample;
    std::size_t raw_total = 0;
    for (const Judgment& j : judgments) {
      if (!label_allowed(j.criterion, j.label)) {
        throw SchemaError("label '" + j.label + "' is not allowed for criterion " +
                          criterion_name(j.criterion));
      }
      if (j.criterion != c) continue;
      ++raw[j.label];
      ++raw_total;
      by_sample[j.sample_id][j.annotator_id] = j.label;
      samples.insert(j.sample_id);
    }
    std::map<std::string, std::size_t> unanimous, majority;
    std::size_t n_unanimous = 0, n_majority = 0;
    for (const auto& [sample, votes] : by_sample) {
      std::map<std::string, std::size_t> tally;
      for (const auto& [annotator, label] : votes) ++tally[label];
      if (tally.size() == 1) {
        ++unanimous[tally.begin()->first];
        ++n_unanimous;
      }
      for (const auto& [label, count] : tally) {
        if (2 * count > votes.size()) {
          ++majority[label];
          ++n_majority;
        }
      }
    }
    for (const std::string& label : labels) {
      r.values[cname + ".raw." + label] = percent(raw[label], raw_total);
      r.values[cname + ".unanimous." + label] = percent(unanimous[label], n_unanimous);
      r.values[cname + ".majority." + label] = percent(majority[label], n_majority);
    }
    r.values[cname + ".judged_samples"] = static_cast<double>(by_sample.size());
    r.values[cname + ".unanimous_samples"] = static_cast<double>(n_unanimous);
    r.values[cname + ".majority_samples"] = static_cast<double>(n_majority);
  }
  r.values["samples"] = static_cast<double>(sample_count.value_or(samples.size()));
  r.values["judgments"] = static_cast<double>(judgments.size());
  r.config["summaries"] = {"raw", "unanimous", "majority"};
  return r;
}

std::string render_agreement(const EvalReport& report, const std::string& summary) {
  if (summary != "raw" && summary != "unanimous" && summary != "majority") {
    throw ConfigError("agreement summary must be raw, unanimous or majority");
  }
  std::string out;
  char buf[96];
  std::snprintf(buf, sizeof buf, "agreement (%s), samples %.0f\n", summary.c_str(),
                report.at("samples"));
  out += buf;
  for (Criterion c : kAllCriteria) {
    const std::string cname = criterion_name(c);
    out += "\n" + cname + "\n";
    for (const std::string& label : criterion_labels(c)) {
      std::snprintf(buf, sizeof buf, "  %-16s %7.2f\n", label.c_str(),
                    report.at(cname + "." + summary + "." + label));
      out += buf;
    }
  }
  return out;
}

}  // namespace vlf::metrics
