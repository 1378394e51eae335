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

#ifndef VIZREF_FRAMES_H_
#define VIZREF_FRAMES_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vizref/data_query.h"
#include "vizref/entity.h"
#include "vizref/semantics.h"
#include "vizref/text.h"

namespace vizref {

enum class PlotType { kBar, kLine, kHeatmap };
std::string_view PlotTypeName(PlotType type);
PlotType ParsePlotType(std::string_view name);

enum class Role { kUser, kAgent };
std::string_view RoleName(Role role);

enum class WindowOperation { kNone, kClose, kMove, kMaximize, kMinimize, kBringUp };
std::string_view WindowOperationName(WindowOperation op);
WindowOperation ParseWindowOperation(std::string_view name);

// Dialogue-act labels. Three drive the engine; the rest are carried through.
inline constexpr std::string_view kCreateVis = "CREATEVIS";
inline constexpr std::string_view kModifyVis = "MODIFYVIS";
inline constexpr std::string_view kWinMgmt = "WINMGMT";

struct DialogueActLabels {
  std::vector<std::string> additional = {"FACTBASED", "PREFERENCE", "CLARIFY", "NAVIGATE",
                                         "OTHER"};

  bool IsKnown(std::string_view label) const;
  std::vector<std::string> All() const;
};

struct TextReference {
  TokenSpan span;
  std::string surface;

  friend bool operator==(const TextReference&, const TextReference&) = default;
};

enum class AgentResponse { kNone, kCreated, kWindowUpdated, kClarification, kAcknowledge };
std::string_view AgentResponseName(AgentResponse response);

struct Layout {
  std::size_t position = 0;
  bool maximized = false;
  bool minimized = false;
  std::size_t moves = 0;

  friend bool operator==(const Layout&, const Layout&) = default;
};

struct VisualizationSpec {
  std::string id;
  PlotType plot_type = PlotType::kBar;
  std::vector<std::string> axes;
  std::vector<Entity> entities;
  std::string title;
  DataQuery query;
  QueryResult data;
  SemanticVector semantic_vector;
  Layout layout;
  std::size_t created_at = 0;

  std::vector<std::string> EntitySlots() const;
  friend bool operator==(const VisualizationSpec&, const VisualizationSpec&) = default;
};

// One shape for both sides of a turn: the user frame holds what was
// understood, the agent frame the values the dialogue manager filled in.
struct ActionFrame {
  Role role = Role::kUser;
  std::string intent;
  bool low_confidence = false;
  std::optional<TextReference> text_ref;
  bool gest_ref = false;
  std::optional<std::string> gesture_target;
  std::vector<SlotFiller> fillers;
  std::vector<SlotFiller> reference_fillers;
  std::optional<std::string> referent_id;
  bool resolution_failed = false;
  std::string resolution_failure;
  std::optional<PlotType> plot_type;
  std::vector<std::string> axes;
  std::vector<std::string> entities;
  std::optional<std::string> title;
  std::optional<DataQuery> data_query;
  WindowOperation window_op = WindowOperation::kNone;
  AgentResponse response = AgentResponse::kNone;
  std::string message;
  std::vector<TextReference> ignored_refs;

  bool HasReference() const { return text_ref.has_value() || gest_ref; }
  friend bool operator==(const ActionFrame&, const ActionFrame&) = default;
};

}  // namespace vizref

#endif  // VIZREF_FRAMES_H_
