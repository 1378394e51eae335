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

#ifndef VIZREF_SPANS_H_
#define VIZREF_SPANS_H_

#include <cstddef>
#include <span>
#include <vector>

#include "vizref/crf.h"
#include "vizref/text.h"

namespace vizref {

// Reference spans of an IOB2 sequence. A stray I-REF opens a new span.
std::vector<TokenSpan> ExtractSpans(std::span<const Tag> tags);

struct SpanScores {
  std::size_t true_positives = 0;
  std::size_t false_positives = 0;
  std::size_t false_negatives = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Micro-averaged exact-match span scores. Throws ArgumentError when the
// corpora or any paired sequence differ in length.
SpanScores SpanF1(std::span<const std::vector<Tag>> gold,
                  std::span<const std::vector<Tag>> predicted);

// Fraction of tokens whose predicted tag equals the gold tag.
double TokenAccuracy(std::span<const std::vector<Tag>> gold,
                     std::span<const std::vector<Tag>> predicted);

struct CrossValidationResult {
  // Held-out prediction for every input utterance, input order.
  std::vector<std::vector<Tag>> predictions;
  std::vector<SpanScores> fold_scores;
  SpanScores pooled;
};

// Fold of utterance i is i % folds. Each fold is decoded by a model trained
// on the remaining folds.
CrossValidationResult CrossValidateCrf(std::span<const TaggedUtterance> corpus,
                                       std::size_t folds, const TrainConfig& config = {});

}  // namespace vizref

#endif  // VIZREF_SPANS_H_
