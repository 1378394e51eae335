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

#include "vizref/establishment.h"

#include <algorithm>

#include "vizref/errors.h"

namespace vizref {

bool HasHeatmapCue(std::span<const Token> utterance) {
  for (std::size_t i = 0; i < utterance.size(); ++i) {
    const std::string w = ToLower(utterance[i].surface);
    if (w == "map" || w == "maps" || w == "heatmap" || w == "heatmaps") return true;
  }
  return false;
}

PlotType InferPlotType(std::span<const Entity> entities, const KnowledgeOntology& ontology,
                       std::span<const Token> utterance) {
  if (HasHeatmapCue(utterance)) return PlotType::kHeatmap;
  bool temporal = false;
  bool spatial_axis = false;
  for (const Entity& e : entities) {
    const SlotKind kind = ontology.KindOf(e.slot);
    temporal = temporal || kind == SlotKind::kTemporal;
    spatial_axis = spatial_axis || (kind == SlotKind::kSpatial && e.IsAxis());
  }
  if (spatial_axis && !temporal) return PlotType::kHeatmap;
  if (temporal) return PlotType::kLine;
  return PlotType::kBar;
}

std::vector<Entity> CombineEntities(std::span<const Entity> fillers,
                                    const VisualizationSpec* referent,
                                    const KnowledgeOntology& ontology) {
  std::vector<Entity> out;
  auto seen = [&](const Entity& e) {
    return std::any_of(out.begin(), out.end(), [&](const Entity& o) {
      return o.slot == e.slot && o.value == e.value;
    });
  };
  bool temporal = false;
  bool spatial = false;
  for (const Entity& e : fillers) {
    const SlotKind kind = ontology.KindOf(e.slot);
    temporal = temporal || kind == SlotKind::kTemporal;
    spatial = spatial || kind == SlotKind::kSpatial;
    if (!seen(e)) out.push_back(e);
  }
  if (!referent) return out;
  for (const Entity& e : referent->entities) {
    const SlotKind kind = ontology.KindOf(e.slot);
    if (kind == SlotKind::kTemporal && temporal) continue;
    if (kind == SlotKind::kSpatial && spatial) continue;
    if (!seen(e)) out.push_back(e);
  }
  return out;
}

std::string MakeTitle(std::span<const Entity> entities, const DataQuery& query) {
  std::string title;
  for (const QueryFilter& f : query.filters) {
    for (const std::string& v : f.values) {
      if (!title.empty()) title += ", ";
      title += v;
    }
  }
  if (title.empty()) {
    title = "all crimes";
    for (const Entity& e : entities) {
      if (e.slot == "CRIME_TYPE" && e.IsAxis()) title = "crimes";
    }
  }
  if (query.group_by) {
    std::string axis = ToLower(*query.group_by);
    std::replace(axis.begin(), axis.end(), '_', ' ');
    title += " by " + axis;
  }
  return title;
}

VisualizationSpec BuildSpec(std::string id, std::vector<Entity> entities, PlotType plot_type,
                            std::size_t turn, const EstablishContext& context) {
  if (!context.extractor) throw ArgumentError("establishment needs a slot extractor");
  const KnowledgeOntology& ontology = context.extractor->ontology();
  VisualizationSpec spec;
  spec.id = std::move(id);
  spec.plot_type = plot_type;
  spec.entities = std::move(entities);
  spec.query = BuildDataQuery(spec.entities, ontology);
  if (spec.query.group_by) spec.axes.push_back(*spec.query.group_by);
  spec.title = MakeTitle(spec.entities, spec.query);
  if (context.table) spec.data = context.table->Execute(spec.query, &ontology);
  const auto fillers = FillersFromEntities(spec.entities);
  spec.semantic_vector = context.extractor->Vectorize(fillers, context.mode);
  spec.created_at = turn;
  return spec;
}

Establishment EstablishEntity(const ActionFrame& frame, const VisualizationSpec* referent,
                              DialogueState& state, const EstablishContext& context,
                              std::span<const Token> utterance) {
  if (frame.intent != kCreateVis && frame.intent != kModifyVis) {
    throw ArgumentError("establishment needs a CREATEVIS or MODIFYVIS frame, got " + frame.intent);
  }
  if (frame.intent == kModifyVis && !referent) {
    throw UnresolvedReferenceError("MODIFYVIS request has no resolved referent");
  }
  if (!context.extractor) throw ArgumentError("establishment needs a slot extractor");
  const KnowledgeOntology& ontology = context.extractor->ontology();
  const auto filler_entities = EntitiesFromFillers(frame.fillers, ontology);
  auto entities =
      CombineEntities(filler_entities, frame.intent == kModifyVis ? referent : nullptr, ontology);
  const PlotType plot = InferPlotType(entities, ontology, utterance);

  Establishment out;
  out.spec = BuildSpec(state.AllocateId(), std::move(entities), plot, state.turn, context);
  out.spec.layout.position = state.history.size();
  out.agent = frame;
  out.agent.role = Role::kAgent;
  if (frame.intent == kModifyVis) out.agent.referent_id = referent->id;
  out.agent.plot_type = out.spec.plot_type;
  out.agent.axes = out.spec.axes;
  out.agent.entities = out.spec.EntitySlots();
  out.agent.title = out.spec.title;
  out.agent.data_query = out.spec.query;
  out.agent.response = AgentResponse::kCreated;
  out.agent.message = "created visualization " + out.spec.id;
  state.history.Add(out.spec);
  return out;
}

ActionFrame MakeClarification(const ActionFrame& frame, std::string message) {
  ActionFrame agent = frame;
  agent.role = Role::kAgent;
  agent.response = AgentResponse::kClarification;
  agent.message = std::move(message);
  return agent;
}

ActionFrame ApplyWindowManagement(const ActionFrame& frame, DialogueState& state) {
  if (frame.intent != kWinMgmt) {
    throw ArgumentError("window management needs a WINMGMT frame, got " + frame.intent);
  }
  if (!frame.referent_id) {
    return MakeClarification(frame, "which visualization do you mean?");
  }
  VisualizationSpec* target = state.history.FindMutable(*frame.referent_id);
  if (!target) return MakeClarification(frame, "that visualization is not on the screen");
  ActionFrame agent = frame;
  agent.role = Role::kAgent;
  agent.response = AgentResponse::kWindowUpdated;
  switch (frame.window_op) {
    case WindowOperation::kNone:
      return MakeClarification(frame, "what should I do with visualization " + target->id + "?");
    case WindowOperation::kClose:
      state.history.Remove(*frame.referent_id);
      break;
    case WindowOperation::kMove:
      ++target->layout.moves;
      break;
    case WindowOperation::kMaximize:
      target->layout.maximized = true;
      target->layout.minimized = false;
      break;
    case WindowOperation::kMinimize:
      target->layout.minimized = true;
      target->layout.maximized = false;
      break;
    case WindowOperation::kBringUp:
      target->layout.minimized = false;
      break;
  }
  agent.message = std::string(WindowOperationName(frame.window_op)) + " " + *frame.referent_id;
  return agent;
}

}  // namespace vizref
