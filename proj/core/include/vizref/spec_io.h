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

#ifndef VIZREF_SPEC_IO_H_
#define VIZREF_SPEC_IO_H_

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "vizref/frames.h"
#include "vizref/history.h"

namespace vizref {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kSpecVersion = "vizref.spec/1";

// Visualization specification wire format. Key order is fixed:
//   version, id, plot_type, axes, entities, title, data, semantic_vector,
//   layout, created_at
// data = {query: {filters, group_by, aggregate}, rows: [{key, count}],
//         empty_result}; semantic_vector lists one value per ontology slot.
Json SpecToJson(const VisualizationSpec& spec);
VisualizationSpec SpecFromJson(const Json& json);

Json EntityToJson(const Entity& entity);
Entity EntityFromJson(const Json& json);
Json DataQueryToJson(const DataQuery& query);
DataQuery DataQueryFromJson(const Json& json);
Json FillerToJson(const SlotFiller& filler);
Json FrameToJson(const ActionFrame& frame);

// {visualizations: [spec...], layout: [{id, position, maximized, minimized,
// moves}]} for the specs on screen, oldest first.
Json ScreenPayload(const DialogueHistory& history);

// Compact, deterministic text form used on the wire and in transcripts.
std::string Serialize(const Json& json);

}  // namespace vizref

#endif  // VIZREF_SPEC_IO_H_
