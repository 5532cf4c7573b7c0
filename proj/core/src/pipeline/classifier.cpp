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

#include "vlf/pipeline/classifier.hpp"

#include <algorithm>
#include <cmath>

#include "vlf/errors.hpp"
#include "vlf/subtitle/cues.hpp"
#include "vlf/text/tokenizer.hpp"

namespace vlf::pipeline {

namespace {

using Features = std::map<std::string, double>;

Features featurize(const std::string& text) {
  Features f;
  const text::Tokens tokens = text::tokenize(text);
  if (tokens.empty()) return f;
  const double w = 1.0 / static_cast<double>(tokens.size());
  for (const std::string& t : tokens) f[t] += w;
  return f;
}

void softmax_inplace(std::vector<double>& z) {
  const double m = *std::max_element(z.begin(), z.end());
  double s = 0.0;
  for (double& v : z) {
    v = std::exp(v - m);
    s += v;
  }
  for (double& v : z) v /= s;
}

}  // namespace

BowClassifier::BowClassifier(std::vector<std::string> labels)
    : labels_(std::move(labels)), bias_(labels_.size(), 0.0) {
  if (labels_.size() < 2) throw ConfigError("a classifier needs at least two labels");
}

void BowClassifier::train(const std::vector<LabeledDoc>& docs, std::size_t iterations,
                          double learning_rate) {
  if (docs.empty()) throw InputError("classifier training corpus is empty");
  const std::size_t k = labels_.size();
  std::vector<Features> x;
  std::vector<std::size_t> y;
  for (const LabeledDoc& d : docs) {
    auto it = std::find(labels_.begin(), labels_.end(), d.label);
    if (it == labels_.end()) throw InputError("unknown classifier label '" + d.label + "'");
    y.push_back(static_cast<std::size_t>(it - labels_.begin()));
    x.push_back(featurize(d.text));
    for (const auto& [tok, v] : x.back()) weights_.try_emplace(tok, std::vector<double>(k, 0.0));
  }
  const double inv_n = 1.0 / static_cast<double>(docs.size());
  for (std::size_t it = 0; it < iterations; ++it) {
    std::map<std::string, std::vector<double>> grad;
    std::vector<double> grad_b(k, 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
      std::vector<double> z = bias_;
      for (const auto& [tok, v] : x[i]) {
        const auto& w = weights_.at(tok);
        for (std::size_t c = 0; c < k; ++c) z[c] += v * w[c];
      }
      softmax_inplace(z);
      z[y[i]] -= 1.0;
      for (std::size_t c = 0; c < k; ++c) grad_b[c] += z[c] * inv_n;
      for (const auto& [tok, v] : x[i]) {
        auto& g = grad.try_emplace(tok, std::vector<double>(k, 0.0)).first->second;
        for (std::size_t c = 0; c < k; ++c) g[c] += z[c] * v * inv_n;
      }
    }
    for (std::size_t c = 0; c < k; ++c) bias_[c] -= learning_rate * grad_b[c];
    for (const auto& [tok, g] : grad) {
      auto& w = weights_.at(tok);
      for (std::size_t c = 0; c < k; ++c) w[c] -= learning_rate * g[c];
    }
  }
}

std::vector<double> BowClassifier::probabilities(const std::string& text) const {
  std::vector<double> z = bias_;
  for (const auto& [tok, v] : featurize(text)) {
    auto it = weights_.find(tok);
    if (it == weights_.end()) continue;
    for (std::size_t c = 0; c < z.size(); ++c) z[c] += v * it->second[c];
  }
  softmax_inplace(z);
  return z;
}

std::string BowClassifier::predict(const std::string& text) const {
  const std::vector<double> p = probabilities(text);
  return labels_[static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin())];
}

nlohmann::json BowClassifier::to_json() const {
  return {{"kind", "bow-classifier"}, {"labels", labels_}, {"bias", bias_}, {"weights", weights_}};
}

BowClassifier BowClassifier::from_json(const nlohmann::json& j) {
  try {
    if (j.at("kind").get<std::string>() != "bow-classifier") {
      throw SchemaError("not a bag-of-words classifier file");
    }
    BowClassifier c(j.at("labels").get<std::vector<std::string>>());
    c.bias_ = j.at("bias").get<std::vector<double>>();
    c.weights_ = j.at("weights").get<std::map<std::string, std::vector<double>>>();
    if (c.bias_.size() != c.labels_.size()) throw SchemaError("classifier bias size mismatch");
    for (const auto& [tok, w] : c.weights_) {
      if (w.size() != c.labels_.size()) throw SchemaError("classifier weight size mismatch");
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("classifier: ") + e.what());
  }
}

void BowClassifier::save(const std::filesystem::path& path) const {
  write_text_file(path, to_json().dump(1) + "\n");
}

BowClassifier BowClassifier::load(const std::filesystem::path& path) {
  try {
    return from_json(nlohmann::json::parse(read_text_file(path)));
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("classifier " + path.string() + ": " + e.what());
  }
}

std::string subtitle_text(const VideoRecord& video) {
  std::string out;
  for (const subtitle::Cue& cue : subtitle::load_subtitles(video.subtitle_path)) {
    if (!out.empty()) out += ' ';
    out += cue.text;
  }
  return out;
}

SelectionResult select_instructional(const std::vector<VideoRecord>& videos,
                                     const TextClassifier& classifier) {
  SelectionResult r;
  for (const VideoRecord& v : videos) {
    std::string text;
    try {
      text = subtitle_text(v);
    } catch (const Error& e) {
      r.skipped.emplace_back(v.video_id, e.what());
      continue;
    }
    if (classifier.predict(text) == kMedicalInstructional) r.kept.push_back(v);
  }
  return r;
}

}  // namespace vlf::pipeline
