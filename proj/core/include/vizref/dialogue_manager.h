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

#ifndef VIZREF_DIALOGUE_MANAGER_H_
#define VIZREF_DIALOGUE_MANAGER_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vizref/crf.h"
#include "vizref/data_query.h"
#include "vizref/establishment.h"
#include "vizref/frames.h"
#include "vizref/history.h"
#include "vizref/resolution.h"
#include "vizref/semantics.h"
#include "vizref/spec_io.h"

namespace vizref {

struct IntentRules {
  // Single-word window verbs and the operation they select.
  std::vector<std::pair<std::string, WindowOperation>> window_verbs = {
      {"close", WindowOperation::kClose},       {"remove", WindowOperation::kClose},
      {"move", WindowOperation::kMove},         {"maximize", WindowOperation::kMaximize},
      {"enlarge", WindowOperation::kMaximize},  {"minimize", WindowOperation::kMinimize}};
  // Two-word window phrases.
  std::vector<std::pair<std::string, WindowOperation>> window_phrases = {
      {"bring up", WindowOperation::kBringUp}};
  std::vector<std::string> display_verbs = {
      "see", "show", "display", "create", "make", "plot", "view", "look",
      "give", "compare", "draw", "want", "need", "get", "break", "split",
      "change", "switch", "pull"};
  DialogueActLabels labels;
};

struct IntentDecision {
  std::string intent;
  bool low_confidence = false;
  WindowOperation window_op = WindowOperation::kNone;
};

// Window verbs win; a display verb with a reference modifies, without one it
// creates; nothing matching falls back to CREATEVIS with low confidence.
IntentDecision ClassifyIntent(std::span<const Token> utterance, bool has_reference,
                              const IntentRules& rules = {});

WindowOperation DetectWindowOperation(std::span<const Token> utterance,
                                      const IntentRules& rules = {});

// Keeps the first reference span and lists the others as ignored. A gesture
// is referential only when a text reference co-occurs. Slots are extracted
// outside the reference; the intent is left for the caller.
ActionFrame BuildUserAction(std::span<const Token> utterance, std::span<const Tag> tags,
                            const std::optional<std::string>& gesture,
                            const SlotExtractor& extractor);

// Vector of the referring expression: fillers of the turn together with the
// fillers inside the reference itself.
SemanticVector ExpressionVector(const ActionFrame& frame, const SlotExtractor& extractor,
                                VectorMode mode);

struct EngineConfig {
  ResolverConfig resolver;
  VectorMode mode = VectorMode::kSoft;
  IntentRules rules;
};

struct TurnInput {
  std::string utterance;
  std::vector<Token> tokens;
  std::vector<Tag> tags;
  std::optional<std::string> gesture;
  // Replay supplies annotated intent and window operation.
  std::optional<std::string> intent;
  std::optional<WindowOperation> window_op;
};

struct TurnRecord {
  std::size_t turn = 0;
  std::string utterance;
  ActionFrame user;
  ActionFrame agent;
  ResolutionResult resolution;
  std::optional<std::string> created_id;
  std::vector<VisualizationSpec> history;
};

Json TurnRecordToJson(const TurnRecord& record);

// The information state of one conversation. Not thread safe; callers
// serialize turns.
class DialogueEngine {
 public:
  DialogueEngine(const SlotExtractor& extractor, const CrimeTable* table,
                 EngineConfig config = {});

  const TurnRecord& ProcessTurn(const TurnInput& input);

  const DialogueState& state() const { return state_; }
  const std::vector<TurnRecord>& transcript() const { return transcript_; }
  const EngineConfig& config() const { return config_; }

 private:
  const SlotExtractor* extractor_;
  const CrimeTable* table_;
  EngineConfig config_;
  DialogueState state_;
  std::vector<TurnRecord> transcript_;
};

}  // namespace vizref

#endif  // VIZREF_DIALOGUE_MANAGER_H_
