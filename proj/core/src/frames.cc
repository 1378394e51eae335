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

#include "vizref/frames.h"

#include <algorithm>

#include "vizref/errors.h"

namespace vizref {

std::string_view PlotTypeName(PlotType type) {
  switch (type) {
    case PlotType::kBar: return "bar";
    case PlotType::kLine: return "line";
    case PlotType::kHeatmap: return "heatmap";
  }
  return "bar";
}

PlotType ParsePlotType(std::string_view name) {
  if (name == "bar") return PlotType::kBar;
  if (name == "line") return PlotType::kLine;
  if (name == "heatmap") return PlotType::kHeatmap;
  throw SchemaError("unknown plot type '" + std::string(name) + "'");
}

std::string_view RoleName(Role role) { return role == Role::kUser ? "user" : "agent"; }

std::string_view WindowOperationName(WindowOperation op) {
  switch (op) {
    case WindowOperation::kNone: return "none";
    case WindowOperation::kClose: return "close";
    case WindowOperation::kMove: return "move";
    case WindowOperation::kMaximize: return "maximize";
    case WindowOperation::kMinimize: return "minimize";
    case WindowOperation::kBringUp: return "bring_up";
  }
  return "none";
}

WindowOperation ParseWindowOperation(std::string_view name) {
  for (auto op : {WindowOperation::kNone, WindowOperation::kClose, WindowOperation::kMove,
                  WindowOperation::kMaximize, WindowOperation::kMinimize,
                  WindowOperation::kBringUp}) {
    if (WindowOperationName(op) == name) return op;
  }
  throw SchemaError("unknown window operation '" + std::string(name) + "'");
}

bool DialogueActLabels::IsKnown(std::string_view label) const {
  if (label == kCreateVis || label == kModifyVis || label == kWinMgmt) return true;
  return std::find(additional.begin(), additional.end(), label) != additional.end();
}

std::vector<std::string> DialogueActLabels::All() const {
  std::vector<std::string> out = {std::string(kCreateVis), std::string(kModifyVis),
                                  std::string(kWinMgmt)};
  out.insert(out.end(), additional.begin(), additional.end());
  return out;
}

std::string_view AgentResponseName(AgentResponse response) {
  switch (response) {
    case AgentResponse::kNone: return "none";
    case AgentResponse::kCreated: return "created";
    case AgentResponse::kWindowUpdated: return "window_updated";
    case AgentResponse::kClarification: return "clarification";
    case AgentResponse::kAcknowledge: return "acknowledge";
  }
  return "none";
}

std::vector<std::string> VisualizationSpec::EntitySlots() const {
  std::vector<std::string> out;
  for (const Entity& e : entities) {
    if (std::find(out.begin(), out.end(), e.slot) == out.end()) out.push_back(e.slot);
  }
  return out;
}

}  // namespace vizref
