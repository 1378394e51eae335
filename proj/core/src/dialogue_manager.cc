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

#include "vizref/dialogue_manager.h"

#include <algorithm>

#include "vizref/errors.h"
#include "vizref/spans.h"

namespace vizref {

WindowOperation DetectWindowOperation(std::span<const Token> utterance, const IntentRules& rules) {
  for (std::size_t i = 0; i < utterance.size(); ++i) {
    const std::string w = ToLower(utterance[i].surface);
    if (i + 1 < utterance.size()) {
      const std::string pair = w + " " + ToLower(utterance[i + 1].surface);
      for (const auto& [phrase, op] : rules.window_phrases) {
        if (pair == phrase) return op;
      }
    }
    for (const auto& [verb, op] : rules.window_verbs) {
      if (w == verb) return op;
    }
  }
  return WindowOperation::kNone;
}

IntentDecision ClassifyIntent(std::span<const Token> utterance, bool has_reference,
                              const IntentRules& rules) {
  IntentDecision d;
  d.window_op = DetectWindowOperation(utterance, rules);
  if (d.window_op != WindowOperation::kNone) {
    d.intent = kWinMgmt;
    return d;
  }
  const bool display = std::any_of(utterance.begin(), utterance.end(), [&](const Token& t) {
    const std::string w = ToLower(t.surface);
    return std::find(rules.display_verbs.begin(), rules.display_verbs.end(), w) !=
           rules.display_verbs.end();
  });
  if (display) {
    d.intent = has_reference ? kModifyVis : kCreateVis;
    return d;
  }
  d.intent = kCreateVis;
  d.low_confidence = true;
  return d;
}

ActionFrame BuildUserAction(std::span<const Token> utterance, std::span<const Tag> tags,
                            const std::optional<std::string>& gesture,
                            const SlotExtractor& extractor) {
  if (tags.size() != utterance.size()) {
    throw ArgumentError("tag sequence length differs from utterance length");
  }
  if (!IsValidIob2(tags)) throw ArgumentError("tag sequence is not valid IOB2");
  ActionFrame frame;
  frame.role = Role::kUser;
  const auto spans = ExtractSpans(tags);
  for (std::size_t i = 0; i < spans.size(); ++i) {
    TextReference ref{spans[i], JoinSurface(utterance, spans[i].begin, spans[i].end)};
    if (i == 0) {
      frame.text_ref = std::move(ref);
    } else {
      frame.ignored_refs.push_back(std::move(ref));
    }
  }
  frame.gesture_target = gesture;
  frame.gest_ref = gesture.has_value() && frame.text_ref.has_value();
  std::optional<TokenSpan> ref_span;
  if (frame.text_ref) ref_span = frame.text_ref->span;
  PrunedFillers pruned = extractor.Extract(utterance, ref_span);
  frame.fillers = std::move(pruned.fillers);
  frame.reference_fillers = std::move(pruned.reference_fillers);
  return frame;
}

SemanticVector ExpressionVector(const ActionFrame& frame, const SlotExtractor& extractor,
                                VectorMode mode) {
  std::vector<SlotFiller> all = frame.fillers;
  all.insert(all.end(), frame.reference_fillers.begin(), frame.reference_fillers.end());
  return extractor.Vectorize(all, mode);
}

Json TurnRecordToJson(const TurnRecord& record) {
  Json j;
  j["turn"] = record.turn;
  j["utterance"] = record.utterance;
  j["user"] = FrameToJson(record.user);
  j["agent"] = FrameToJson(record.agent);
  Json res;
  res["id"] = record.resolution.id ? Json(*record.resolution.id) : Json(nullptr);
  res["score"] = record.resolution.score;
  res["by_gesture"] = record.resolution.by_gesture;
  res["failure"] = record.resolution.failure
                       ? Json(ResolutionFailureName(*record.resolution.failure))
                       : Json(nullptr);
  Json cands = Json::array();
  for (const CandidateScore& c : record.resolution.candidates) {
    Json cj;
    cj["id"] = c.id;
    cj["rank"] = c.rank;
    cj["weight"] = c.weight;
    cj["similarity"] = c.similarity;
    cj["score"] = c.score;
    cands.push_back(std::move(cj));
  }
  res["candidates"] = std::move(cands);
  j["resolution"] = std::move(res);
  j["created_id"] = record.created_id ? Json(*record.created_id) : Json(nullptr);
  Json history = Json::array();
  for (const auto& s : record.history) history.push_back(SpecToJson(s));
  j["history"] = std::move(history);
  return j;
}

DialogueEngine::DialogueEngine(const SlotExtractor& extractor, const CrimeTable* table,
                               EngineConfig config)
    : extractor_(&extractor), table_(table), config_(std::move(config)) {
  if (config_.resolver.cutoff < 0.0 || config_.resolver.cutoff > 1.0) {
    throw ValidationError("cutoff must be in [0, 1]");
  }
}

const TurnRecord& DialogueEngine::ProcessTurn(const TurnInput& input) {
  ++state_.turn;
  TurnRecord record;
  record.turn = state_.turn;
  record.utterance = input.utterance;
  ActionFrame frame = BuildUserAction(input.tokens, input.tags, input.gesture, *extractor_);

  IntentDecision decision;
  if (input.intent) {
    decision.intent = *input.intent;
    decision.window_op = input.window_op.value_or(
        *input.intent == kWinMgmt ? DetectWindowOperation(input.tokens, config_.rules)
                                  : WindowOperation::kNone);
  } else {
    decision = ClassifyIntent(input.tokens, frame.HasReference(), config_.rules);
  }
  if (!config_.rules.labels.IsKnown(decision.intent)) {
    throw ValidationError("unknown dialogue act " + decision.intent);
  }
  frame.intent = decision.intent;
  frame.low_confidence = decision.low_confidence;
  frame.window_op = decision.window_op;

  const bool actionable =
      frame.intent == kCreateVis || frame.intent == kModifyVis || frame.intent == kWinMgmt;
  const bool idle = frame.low_confidence && frame.fillers.empty() && !frame.HasReference();
  if (frame.HasReference()) {
    record.resolution = ResolveReference(frame, state_.history,
                                         ExpressionVector(frame, *extractor_, config_.mode),
                                         config_.resolver);
  } else {
    record.resolution.failure = ResolutionFailure::kNoReference;
  }
  const bool needs_referent = frame.intent == kModifyVis || frame.intent == kWinMgmt;
  if (needs_referent) {
    if (record.resolution.ok()) {
      frame.referent_id = record.resolution.id;
    } else {
      frame.resolution_failed = true;
      frame.resolution_failure = ResolutionFailureName(*record.resolution.failure);
    }
  }

  ActionFrame agent;
  if (!actionable || idle) {
    agent = frame;
    agent.role = Role::kAgent;
    agent.response = AgentResponse::kAcknowledge;
    agent.message = "ok";
  } else if (frame.intent == kWinMgmt) {
    agent = ApplyWindowManagement(frame, state_);
  } else if (frame.intent == kModifyVis && !frame.referent_id) {
    agent = MakeClarification(frame, "which visualization do you mean?");
  } else {
    const VisualizationSpec* referent =
        frame.referent_id ? state_.history.Find(*frame.referent_id) : nullptr;
    EstablishContext context{extractor_, table_, config_.mode};
    Establishment made = EstablishEntity(frame, referent, state_, context, input.tokens);
    record.created_id = made.spec.id;
    agent = std::move(made.agent);
  }
  record.user = std::move(frame);
  record.agent = std::move(agent);
  record.history = state_.history.entries();
  transcript_.push_back(std::move(record));
  return transcript_.back();
}

}  // namespace vizref
