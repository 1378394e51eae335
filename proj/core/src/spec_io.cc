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

#include "vizref/spec_io.h"

#include "vizref/errors.h"

namespace vizref {

namespace {

const Json& Field(const Json& json, const char* key) {
  if (!json.is_object() || !json.contains(key)) {
    throw SchemaError(std::string("visualization spec is missing '") + key + "'");
  }
  return json.at(key);
}

Json LayoutToJson(const Layout& layout) {
  Json j;
  j["position"] = layout.position;
  j["maximized"] = layout.maximized;
  j["minimized"] = layout.minimized;
  j["moves"] = layout.moves;
  return j;
}

Json SpanJson(const TokenSpan& span) { return Json::array({span.begin, span.end}); }

}  // namespace

Json EntityToJson(const Entity& entity) {
  Json j;
  j["slot"] = entity.slot;
  j["value"] = entity.value ? Json(*entity.value) : Json(nullptr);
  j["text"] = entity.text;
  j["terms"] = entity.terms;
  j["score"] = entity.score;
  return j;
}

Entity EntityFromJson(const Json& json) {
  Entity e;
  e.slot = Field(json, "slot").get<std::string>();
  const Json& value = Field(json, "value");
  if (!value.is_null()) e.value = value.get<std::string>();
  e.text = json.value("text", std::string());
  e.terms = json.value("terms", std::vector<std::string>());
  e.score = json.value("score", 0.0);
  return e;
}

Json DataQueryToJson(const DataQuery& query) {
  Json j;
  Json filters = Json::array();
  for (const QueryFilter& f : query.filters) {
    Json fj;
    fj["slot"] = f.slot;
    fj["values"] = f.values;
    filters.push_back(std::move(fj));
  }
  j["filters"] = std::move(filters);
  j["group_by"] = query.group_by ? Json(*query.group_by) : Json(nullptr);
  j["aggregate"] = query.aggregate;
  return j;
}

DataQuery DataQueryFromJson(const Json& json) {
  DataQuery q;
  for (const Json& f : Field(json, "filters")) {
    q.filters.push_back(
        {Field(f, "slot").get<std::string>(), Field(f, "values").get<std::vector<std::string>>()});
  }
  const Json& group = Field(json, "group_by");
  if (!group.is_null()) q.group_by = group.get<std::string>();
  q.aggregate = Field(json, "aggregate").get<std::string>();
  return q;
}

Json SpecToJson(const VisualizationSpec& spec) {
  Json j;
  j["version"] = kSpecVersion;
  j["id"] = spec.id;
  j["plot_type"] = PlotTypeName(spec.plot_type);
  j["axes"] = spec.axes;
  Json entities = Json::array();
  for (const Entity& e : spec.entities) entities.push_back(EntityToJson(e));
  j["entities"] = std::move(entities);
  j["title"] = spec.title;
  Json data;
  data["query"] = DataQueryToJson(spec.query);
  Json rows = Json::array();
  for (const DataRow& r : spec.data.rows) {
    Json rj;
    rj["key"] = r.key;
    rj["count"] = r.count;
    rows.push_back(std::move(rj));
  }
  data["rows"] = std::move(rows);
  data["empty_result"] = spec.data.empty_result;
  j["data"] = std::move(data);
  j["semantic_vector"] = spec.semantic_vector.values;
  j["layout"] = LayoutToJson(spec.layout);
  j["created_at"] = spec.created_at;
  return j;
}

VisualizationSpec SpecFromJson(const Json& json) {
  if (Field(json, "version").get<std::string>() != kSpecVersion) {
    throw SchemaError("unsupported visualization spec version");
  }
  VisualizationSpec spec;
  spec.id = Field(json, "id").get<std::string>();
  spec.plot_type = ParsePlotType(Field(json, "plot_type").get<std::string>());
  spec.axes = Field(json, "axes").get<std::vector<std::string>>();
  for (const Json& e : Field(json, "entities")) spec.entities.push_back(EntityFromJson(e));
  spec.title = Field(json, "title").get<std::string>();
  const Json& data = Field(json, "data");
  spec.query = DataQueryFromJson(Field(data, "query"));
  for (const Json& r : Field(data, "rows")) {
    spec.data.rows.push_back({Field(r, "key").get<std::string>(), Field(r, "count").get<std::int64_t>()});
  }
  spec.data.empty_result = Field(data, "empty_result").get<bool>();
  const Json& vec = Field(json, "semantic_vector");
  if (!vec.is_array() || vec.size() != kNumParentSlots) {
    throw SchemaError("semantic_vector must have 11 values");
  }
  for (std::size_t i = 0; i < kNumParentSlots; ++i) spec.semantic_vector.values[i] = vec[i].get<double>();
  const Json& layout = Field(json, "layout");
  spec.layout.position = Field(layout, "position").get<std::size_t>();
  spec.layout.maximized = Field(layout, "maximized").get<bool>();
  spec.layout.minimized = Field(layout, "minimized").get<bool>();
  spec.layout.moves = Field(layout, "moves").get<std::size_t>();
  spec.created_at = Field(json, "created_at").get<std::size_t>();
  return spec;
}

Json FillerToJson(const SlotFiller& filler) {
  Json j;
  j["span"] = SpanJson(filler.span);
  j["text"] = filler.text;
  j["slot"] = filler.slot;
  j["score"] = filler.score;
  j["head_terms"] = filler.head_terms;
  return j;
}

Json FrameToJson(const ActionFrame& frame) {
  Json j;
  j["role"] = RoleName(frame.role);
  j["intent"] = frame.intent;
  j["low_confidence"] = frame.low_confidence;
  if (frame.text_ref) {
    Json r;
    r["span"] = SpanJson(frame.text_ref->span);
    r["surface"] = frame.text_ref->surface;
    j["text_ref"] = std::move(r);
  } else {
    j["text_ref"] = nullptr;
  }
  j["gest_ref"] = frame.gest_ref;
  j["gesture_target"] = frame.gesture_target ? Json(*frame.gesture_target) : Json(nullptr);
  Json fillers = Json::array();
  for (const auto& f : frame.fillers) fillers.push_back(FillerToJson(f));
  j["fillers"] = std::move(fillers);
  Json ref_fillers = Json::array();
  for (const auto& f : frame.reference_fillers) ref_fillers.push_back(FillerToJson(f));
  j["reference_fillers"] = std::move(ref_fillers);
  j["referent_id"] = frame.referent_id ? Json(*frame.referent_id) : Json(nullptr);
  j["resolution_failed"] = frame.resolution_failed;
  j["resolution_failure"] = frame.resolution_failure;
  j["plot_type"] = frame.plot_type ? Json(PlotTypeName(*frame.plot_type)) : Json(nullptr);
  j["axes"] = frame.axes;
  j["entities"] = frame.entities;
  j["title"] = frame.title ? Json(*frame.title) : Json(nullptr);
  j["data_query"] = frame.data_query ? DataQueryToJson(*frame.data_query) : Json(nullptr);
  j["window_op"] = WindowOperationName(frame.window_op);
  j["response"] = AgentResponseName(frame.response);
  j["message"] = frame.message;
  Json ignored = Json::array();
  for (const auto& r : frame.ignored_refs) {
    Json rj;
    rj["span"] = SpanJson(r.span);
    rj["surface"] = r.surface;
    ignored.push_back(std::move(rj));
  }
  j["ignored_refs"] = std::move(ignored);
  return j;
}

Json ScreenPayload(const DialogueHistory& history) {
  Json j;
  Json specs = Json::array();
  Json layout = Json::array();
  for (const VisualizationSpec& s : history.entries()) {
    specs.push_back(SpecToJson(s));
    Json l;
    l["id"] = s.id;
    l.update(LayoutToJson(s.layout));
    layout.push_back(std::move(l));
  }
  j["visualizations"] = std::move(specs);
  j["layout"] = std::move(layout);
  return j;
}

std::string Serialize(const Json& json) { return json.dump(); }

}  // namespace vizref
