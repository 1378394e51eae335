// Copyright 2026 The Vizref Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef VIZREF_TESTS_ORACLES_H_
#define VIZREF_TESTS_ORACLES_H_

#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "vizref/crf.h"
#include "vizref/text.h"

namespace vizref::testing {

// Scores every one of the 3^n sequences, skips the IOB2-invalid ones and
// keeps the first best in lexicographic order B < I < O.
inline std::vector<Tag> BruteForceDecode(const CrfModel& model, std::span<const Token> tokens) {
  const std::size_t n = tokens.size();
  std::vector<std::vector<double>> emit(n, std::vector<double>(kNumTags, 0.0));
  for (std::size_t t = 0; t < n; ++t) {
    for (const auto& f : ExtractFeatures(tokens, t)) {
      const auto index = model.FeatureIndex(f);
      if (!index) continue;
      for (Tag y : kAllTags) emit[t][static_cast<std::size_t>(y)] += model.emission(*index, y);
    }
  }
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= kNumTags;
  std::vector<Tag> best;
  double best_score = 0.0;
  std::vector<Tag> seq(n);
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (std::size_t i = n; i-- > 0;) {
      seq[i] = static_cast<Tag>(c % kNumTags);
      c /= kNumTags;
    }
    bool valid = true;
    for (std::size_t i = 0; i < n && valid; ++i) {
      if (seq[i] == Tag::kInside && (i == 0 || seq[i - 1] == Tag::kOutside)) valid = false;
    }
    if (!valid) continue;
    double s = model.start(seq[0]) + emit[0][static_cast<std::size_t>(seq[0])];
    for (std::size_t i = 1; i < n; ++i) {
      s += model.transition(seq[i - 1], seq[i]) + emit[i][static_cast<std::size_t>(seq[i])];
    }
    // Codes increase in lexicographic order, so only a strict gain replaces.
    if (best.empty() || s > best_score) {
      best = seq;
      best_score = s;
    }
  }
  return best;
}

inline std::vector<Token> RandomUtterance(std::mt19937_64& rng, std::size_t length) {
  static const std::vector<std::pair<std::string, Pos>> pool = {
      {"show", Pos::kVerb},  {"this", Pos::kDet},   {"graph", Pos::kNoun},
      {"by", Pos::kAdp},     {"month", Pos::kNoun}, {"that", Pos::kDet},
      {"one", Pos::kNum},    {"theft", Pos::kNoun}, {"the", Pos::kDet},
      {"chart", Pos::kNoun}, {"can", Pos::kVerb},   {"it", Pos::kPron}};
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::vector<Token> out;
  for (std::size_t i = 0; i < length; ++i) {
    const auto& [w, p] = pool[pick(rng)];
    out.push_back({w, p});
  }
  return out;
}

// Model over the utterance's own features. Integer weights in [-2, 2] make
// exact score ties common, which exercises the tie-break.
inline CrfModel RandomModel(std::mt19937_64& rng, std::span<const Token> tokens, bool integer) {
  CrfModel model;
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    for (const auto& f : ExtractFeatures(tokens, t)) model.AddFeature(f);
  }
  std::uniform_int_distribution<int> small(-2, 2);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto draw = [&] { return integer ? static_cast<double>(small(rng)) : normal(rng); };
  std::vector<double> params(model.num_parameters());
  for (double& p : params) p = draw();
  model.SetParameters(params);
  return model;
}

}  // namespace vizref::testing

#endif  // VIZREF_TESTS_ORACLES_H_
