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

#include "vizref/resolution.h"

#include <charconv>

#include "vizref/errors.h"
#include "vizref/ontology.h"

namespace vizref {

std::vector<double> RecencyWeights(std::size_t n) {
  std::vector<double> w(n, 1.0);
  const std::size_t head = (n + 1) / 2;
  for (std::size_t r = head + 1; r <= n; ++r) {
    w[r - 1] = static_cast<double>(n - r) / static_cast<double>(n - head);
  }
  return w;
}

std::vector<double> FlatRecencyWeights(std::size_t n) { return std::vector<double>(n, 1.0); }

RecencySchedule ParseRecencySchedule(std::string_view name) {
  if (name == "linear") return RecencyWeights;
  if (name == "flat") return FlatRecencyWeights;
  throw ArgumentError("decay schedule must be 'linear' or 'flat', got '" + std::string(name) +
                      "'");
}

Window Window::Parse(std::string_view text) {
  if (text == "inf" || text == "unlimited") return Unlimited();
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ValidationError("window must be a non-negative integer or 'inf', got '" +
                          std::string(text) + "'");
  }
  return Of(value);
}

std::size_t Window::Clamp(std::size_t history_size) const {
  return size_ ? std::min(*size_, history_size) : history_size;
}

std::string Window::ToString() const { return size_ ? std::to_string(*size_) : "inf"; }

std::string_view ResolutionFailureName(ResolutionFailure failure) {
  switch (failure) {
    case ResolutionFailure::kNoReference: return "no_reference";
    case ResolutionFailure::kEmptyWindow: return "empty_window";
    case ResolutionFailure::kEmptyHistory: return "empty_history";
    case ResolutionFailure::kGestureOutsideWindow: return "gesture_outside_window";
    case ResolutionFailure::kBelowCutoff: return "below_cutoff";
  }
  return "unknown";
}

namespace {

ResolutionResult Fail(ResolutionFailure failure) {
  ResolutionResult r;
  r.failure = failure;
  return r;
}

}  // namespace

ResolutionResult ResolveReference(const ActionFrame& frame, const DialogueHistory& history,
                                  const SemanticVector& expression,
                                  const ResolverConfig& config) {
  const bool gesture = config.use_gesture && frame.gest_ref && frame.gesture_target;
  if (!gesture && !frame.text_ref) return Fail(ResolutionFailure::kNoReference);
  if (!config.window.unlimited() && config.window.size() == 0) {
    return Fail(ResolutionFailure::kEmptyWindow);
  }
  if (history.empty()) return Fail(ResolutionFailure::kEmptyHistory);

  const std::size_t n = history.size();
  const std::size_t eligible = config.window.Clamp(n);

  if (gesture) {
    auto rank = history.RankOf(*frame.gesture_target);
    if (!rank || *rank > eligible) return Fail(ResolutionFailure::kGestureOutsideWindow);
    ResolutionResult r;
    r.id = *frame.gesture_target;
    r.score = 1.0;
    r.by_gesture = true;
    return r;
  }

  const std::vector<double> weights = config.schedule(n);
  if (weights.size() != n) throw ArgumentError("recency schedule returned wrong length");
  const bool content_free = expression.IsZero();

  ResolutionResult r;
  std::optional<std::size_t> best;
  for (std::size_t rank = 1; rank <= eligible; ++rank) {
    const VisualizationSpec& spec = history.AtRank(rank);
    CandidateScore c;
    c.id = spec.id;
    c.rank = rank;
    c.weight = weights[rank - 1];
    c.similarity =
        content_free ? 1.0 : Cosine(expression.values, spec.semantic_vector.values);
    c.score = c.weight * c.similarity;
    // Strict comparison keeps the more recent entry on ties.
    if (!best || c.score > r.candidates[*best].score) best = r.candidates.size();
    r.candidates.push_back(std::move(c));
  }
  const CandidateScore& top = r.candidates[*best];
  if (top.score > config.cutoff) {
    r.id = top.id;
    r.score = top.score;
  } else {
    r.score = top.score;
    r.failure = ResolutionFailure::kBelowCutoff;
  }
  return r;
}

}  // namespace vizref
