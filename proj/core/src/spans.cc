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

#include "vizref/spans.h"

#include <algorithm>
#include <string>

#include "vizref/errors.h"

namespace vizref {

std::vector<TokenSpan> ExtractSpans(std::span<const Tag> tags) {
  std::vector<TokenSpan> spans;
  for (std::size_t i = 0; i < tags.size(); ++i) {
    const bool continues = tags[i] == Tag::kInside && !spans.empty() && spans.back().end == i;
    if (continues) {
      spans.back().end = i + 1;
    } else if (tags[i] != Tag::kOutside) {
      spans.push_back({i, i + 1});
    }
  }
  return spans;
}

namespace {

void Finish(SpanScores& s) {
  const double tp = static_cast<double>(s.true_positives);
  s.precision = s.true_positives + s.false_positives == 0
                    ? 0.0
                    : tp / static_cast<double>(s.true_positives + s.false_positives);
  s.recall = s.true_positives + s.false_negatives == 0
                 ? 0.0
                 : tp / static_cast<double>(s.true_positives + s.false_negatives);
  s.f1 = s.precision + s.recall == 0.0 ? 0.0
                                       : 2.0 * s.precision * s.recall / (s.precision + s.recall);
}

void CheckParallel(std::span<const std::vector<Tag>> gold,
                   std::span<const std::vector<Tag>> predicted) {
  if (gold.size() != predicted.size()) {
    throw ArgumentError("gold and predicted corpora differ in length (" +
                        std::to_string(gold.size()) + " vs " +
                        std::to_string(predicted.size()) + ")");
  }
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (gold[i].size() != predicted[i].size()) {
      throw ArgumentError("sequence " + std::to_string(i) + " differs in length");
    }
  }
}

}  // namespace

SpanScores SpanF1(std::span<const std::vector<Tag>> gold,
                  std::span<const std::vector<Tag>> predicted) {
  CheckParallel(gold, predicted);
  SpanScores s;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const auto g = ExtractSpans(gold[i]);
    const auto p = ExtractSpans(predicted[i]);
    std::size_t matched = 0;
    for (const TokenSpan& span : p) {
      if (std::find(g.begin(), g.end(), span) != g.end()) ++matched;
    }
    s.true_positives += matched;
    s.false_positives += p.size() - matched;
    s.false_negatives += g.size() - matched;
  }
  Finish(s);
  return s;
}

double TokenAccuracy(std::span<const std::vector<Tag>> gold,
                     std::span<const std::vector<Tag>> predicted) {
  CheckParallel(gold, predicted);
  std::size_t total = 0;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    for (std::size_t t = 0; t < gold[i].size(); ++t) {
      ++total;
      correct += gold[i][t] == predicted[i][t] ? 1 : 0;
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total);
}

CrossValidationResult CrossValidateCrf(std::span<const TaggedUtterance> corpus,
                                       std::size_t folds, const TrainConfig& config) {
  if (folds < 2) throw ArgumentError("cross-validation needs at least 2 folds");
  if (corpus.size() < folds) throw ArgumentError("fewer utterances than folds");
  CrossValidationResult result;
  result.predictions.resize(corpus.size());
  std::vector<std::vector<Tag>> all_gold;
  for (const auto& u : corpus) all_gold.push_back(u.tags);

  for (std::size_t fold = 0; fold < folds; ++fold) {
    std::vector<TaggedUtterance> train;
    std::vector<std::vector<Tag>> gold, predicted;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      if (i % folds != fold) train.push_back(corpus[i]);
    }
    const CrfModel model = TrainCrf(train, config).model;
    for (std::size_t i = fold; i < corpus.size(); i += folds) {
      result.predictions[i] = Decode(model, corpus[i].tokens);
      gold.push_back(corpus[i].tags);
      predicted.push_back(result.predictions[i]);
    }
    result.fold_scores.push_back(SpanF1(gold, predicted));
  }
  result.pooled = SpanF1(all_gold, result.predictions);
  return result;
}

}  // namespace vizref
