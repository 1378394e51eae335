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

#ifndef VIZREF_ESTABLISHMENT_H_
#define VIZREF_ESTABLISHMENT_H_

#include <span>
#include <string>
#include <vector>

#include "vizref/data_query.h"
#include "vizref/frames.h"
#include "vizref/history.h"
#include "vizref/ontology.h"
#include "vizref/semantics.h"

namespace vizref {

// "map", "heat map" or "heatmap" in the utterance.
bool HasHeatmapCue(std::span<const Token> utterance);

// heatmap on a lexical cue or on a spatial axis with nothing temporal;
// line when anything temporal is present; bar otherwise.
PlotType InferPlotType(std::span<const Entity> entities, const KnowledgeOntology& ontology,
                       std::span<const Token> utterance);

// Fillers first, then referent entities that no filler supersedes. A
// temporal filler replaces the referent's temporal entities and a spatial
// filler its spatial ones; categorical entities accumulate.
std::vector<Entity> CombineEntities(std::span<const Entity> fillers,
                                    const VisualizationSpec* referent,
                                    const KnowledgeOntology& ontology);

std::string MakeTitle(std::span<const Entity> entities, const DataQuery& query);

struct Establishment {
  ActionFrame agent;
  VisualizationSpec spec;
};

struct EstablishContext {
  const SlotExtractor* extractor = nullptr;
  const CrimeTable* table = nullptr;
  VectorMode mode = VectorMode::kSoft;
};

// Builds the new visualization for a CREATEVIS or MODIFYVIS frame and adds
// it to the history. MODIFYVIS without a referent throws
// UnresolvedReferenceError and leaves the state untouched.
Establishment EstablishEntity(const ActionFrame& frame, const VisualizationSpec* referent,
                              DialogueState& state, const EstablishContext& context,
                              std::span<const Token> utterance);

// Spec for a fixed entity list, not added to any history.
VisualizationSpec BuildSpec(std::string id, std::vector<Entity> entities, PlotType plot_type,
                            std::size_t turn, const EstablishContext& context);

// close removes the referent; move, maximize, minimize and bring_up only
// touch its layout. A missing referent or operation yields a clarification.
ActionFrame ApplyWindowManagement(const ActionFrame& frame, DialogueState& state);

ActionFrame MakeClarification(const ActionFrame& frame, std::string message);

}  // namespace vizref

#endif  // VIZREF_ESTABLISHMENT_H_
