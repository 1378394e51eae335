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

#ifndef VIZREF_RESOLUTION_H_
#define VIZREF_RESOLUTION_H_

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vizref/frames.h"
#include "vizref/history.h"
#include "vizref/semantics.h"

namespace vizref {

// Most-recent-first weights for a history of n entries.
using RecencySchedule = std::function<std::vector<double>(std::size_t n)>;

// Ranks 1..ceil(n/2) weigh 1; later ranks fall linearly to 0 at rank n.
std::vector<double> RecencyWeights(std::size_t n);
std::vector<double> FlatRecencyWeights(std::size_t n);
RecencySchedule ParseRecencySchedule(std::string_view name);

// Number of most recent entries eligible as referents.
class Window {
 public:
  static Window Unlimited() { return Window(std::nullopt); }
  static Window Of(std::size_t size) { return Window(size); }
  // "0", "1", ... or "inf".
  static Window Parse(std::string_view text);

  bool unlimited() const { return !size_; }
  std::size_t size() const { return size_.value_or(0); }
  std::size_t Clamp(std::size_t history_size) const;
  std::string ToString() const;

  friend bool operator==(const Window&, const Window&) = default;

 private:
  explicit Window(std::optional<std::size_t> size) : size_(size) {}
  std::optional<std::size_t> size_;
};

enum class ResolutionFailure {
  kNoReference,
  kEmptyWindow,
  kEmptyHistory,
  kGestureOutsideWindow,
  kBelowCutoff,
};
std::string_view ResolutionFailureName(ResolutionFailure failure);

struct CandidateScore {
  std::string id;
  std::size_t rank = 0;
  double weight = 0.0;
  double similarity = 0.0;
  double score = 0.0;
};

struct ResolutionResult {
  std::optional<std::string> id;
  double score = 0.0;
  bool by_gesture = false;
  std::optional<ResolutionFailure> failure;
  std::vector<CandidateScore> candidates;

  bool ok() const { return id.has_value(); }
};

struct ResolverConfig {
  Window window = Window::Unlimited();
  double cutoff = 0.2;
  RecencySchedule schedule = RecencyWeights;
  // When false a co-occurring gesture is ignored and text scoring decides.
  bool use_gesture = true;
};

// Gesture: the pointed visualization if it is inside the window, score 1.
// Text: argmax of weight(rank) * cosine(expression, candidate) over the
// window, accepted only when strictly above the cutoff; ties favour the more
// recent entry. A zero expression vector carries no content, so every
// candidate gets similarity 1 and recency alone decides.
ResolutionResult ResolveReference(const ActionFrame& frame, const DialogueHistory& history,
                                  const SemanticVector& expression,
                                  const ResolverConfig& config);

}  // namespace vizref

#endif  // VIZREF_RESOLUTION_H_
