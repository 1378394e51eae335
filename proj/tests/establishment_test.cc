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


#include <algorithm>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "test_support.h"
#include "vizref/errors.h"
#include "vizref/establishment.h"

namespace vizref {
namespace {

using testing::Fixture;
using testing::Toks;

Entity Axis(std::string slot, std::string text) {
  Entity e;
  e.slot = std::move(slot);
  e.text = text;
  e.terms = {text};
  return e;
}

Entity Value(std::string slot, std::string value) {
  Entity e = Axis(std::move(slot), value);
  e.value = value;
  return e;
}

bool HasSlot(const std::vector<Entity>& es, std::string_view slot) {
  return std::any_of(es.begin(), es.end(), [&](const Entity& e) { return e.slot == slot; });
}

EstablishContext Context() { return {&Fixture().extractor(), Fixture().table(), VectorMode::kSoft}; }

TEST(PlotRule, RuleTable) {
  const auto& o = Fixture().ontology();
  const auto none = Toks("show me");
  EXPECT_EQ(InferPlotType(std::vector<Entity>{Axis("MONTH", "month"), Value("CRIME_TYPE", "theft")},
                          o, none),
            PlotType::kLine);
  EXPECT_EQ(InferPlotType(std::vector<Entity>{Value("CRIME_TYPE", "theft")}, o, none),
            PlotType::kBar);
  EXPECT_EQ(InferPlotType(std::vector<Entity>{Axis("NEIGHBORHOOD", "neighborhood")}, o,
                          Toks("show crimes on a heat map")),
            PlotType::kHeatmap);
  EXPECT_EQ(InferPlotType(std::vector<Entity>{Axis("NEIGHBORHOOD", "neighborhood")}, o, none),
            PlotType::kHeatmap);
  // A spatial value restricts the data; with nothing to plot along it stays a bar.
  EXPECT_EQ(InferPlotType(std::vector<Entity>{Value("CRIME_TYPE", "theft"),
                                              Value("NEIGHBORHOOD", "downtown")},
                          o, none),
            PlotType::kBar);
  EXPECT_EQ(InferPlotType(std::vector<Entity>{Axis("NEIGHBORHOOD", "neighborhood"),
                                              Axis("DAY", "day")},
                          o, none),
            PlotType::kLine);
  EXPECT_EQ(InferPlotType(std::vector<Entity>{Axis("DAY", "day")}, o, Toks("as a heatmap")),
            PlotType::kHeatmap);
  EXPECT_EQ(InferPlotType(std::vector<Entity>{}, o, none), PlotType::kBar);
}

TEST(Combine, TemporalFillerReplacesTemporalAxisAndKeepsCategorical) {
  const auto& o = Fixture().ontology();
  VisualizationSpec referent;
  referent.entities = {Axis("DAY", "day"), Value("CRIME_TYPE", "theft"),
                       Value("NEIGHBORHOOD", "downtown")};
  const std::vector<Entity> fillers = {Axis("MONTH", "months")};
  const auto out = CombineEntities(fillers, &referent, o);
  ASSERT_EQ(out.size(), 3u);
  EXPECT_EQ(out[0].slot, "MONTH");
  EXPECT_FALSE(HasSlot(out, "DAY"));
  EXPECT_TRUE(HasSlot(out, "CRIME_TYPE"));
  EXPECT_TRUE(HasSlot(out, "NEIGHBORHOOD"));
}

TEST(Combine, CategoricalAccumulatesAndDuplicatesCollapse) {
  const auto& o = Fixture().ontology();
  VisualizationSpec referent;
  referent.entities = {Value("CRIME_TYPE", "theft"), Axis("YEAR", "year")};
  const std::vector<Entity> fillers = {Value("CRIME_TYPE", "battery"),
                                       Value("CRIME_TYPE", "theft"),
                                       Value("STREET", "halsted")};
  const auto out = CombineEntities(fillers, &referent, o);
  ASSERT_EQ(out.size(), 4u);
  EXPECT_EQ(std::count_if(out.begin(), out.end(),
                          [](const Entity& e) { return e.value == "theft"; }),
            1);
  EXPECT_TRUE(HasSlot(out, "YEAR"));
}

TEST(Combine, NeverDropsUnsupersededEntities) {
  const auto& o = Fixture().ontology();
  std::mt19937_64 rng(19);
  std::vector<Entity> pool;
  for (const auto& slot : o.slots()) {
    pool.push_back(Axis(slot.name, slot.generic_terms.front()));
    for (const auto& t : slot.terms) {
      if (std::find(slot.generic_terms.begin(), slot.generic_terms.end(), t) ==
          slot.generic_terms.end()) {
        pool.push_back(Value(slot.name, t));
        break;
      }
    }
  }
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (int trial = 0; trial < 500; ++trial) {
    VisualizationSpec referent;
    std::vector<Entity> fillers;
    for (int i = 0, n = 1 + trial % 4; i < n; ++i) referent.entities.push_back(pool[pick(rng)]);
    for (int i = 0, n = trial % 3; i < n; ++i) fillers.push_back(pool[pick(rng)]);
    const auto out = CombineEntities(fillers, &referent, o);
    auto present = [&](const Entity& e) {
      return std::any_of(out.begin(), out.end(), [&](const Entity& x) {
        return x.slot == e.slot && x.value == e.value;
      });
    };
    for (const auto& f : fillers) EXPECT_TRUE(present(f));
    for (const auto& e : referent.entities) {
      const SlotKind kind = o.KindOf(e.slot);
      const bool superseded =
          kind != SlotKind::kCategorical &&
          std::any_of(fillers.begin(), fillers.end(),
                      [&](const Entity& f) { return o.KindOf(f.slot) == kind; });
      EXPECT_EQ(present(e), !superseded || std::any_of(fillers.begin(), fillers.end(),
                                                       [&](const Entity& f) {
                                                         return f.slot == e.slot &&
                                                                f.value == e.value;
                                                       }));
    }
  }
}

TEST(Establish, DayToMonthSubstitution) {
  const auto& x = Fixture().extractor();
  DialogueState state;
  state.next_id = 8;
  const auto referent_entities = std::vector<Entity>{Axis("DAY", "day"), Value("CRIME_TYPE", "theft")};
  VisualizationSpec referent =
      BuildSpec("08-3", referent_entities, PlotType::kLine, 1, Context());
  state.history.Add(referent);
  state.next_id = 9;
  state.turn = 2;

  const auto toks = Toks("can you have this graph for months of the year");
  ActionFrame frame;
  frame.intent = std::string(kModifyVis);
  frame.text_ref = TextReference{{3, 5}, "this graph"};
  frame.fillers = x.Extract(toks, TokenSpan{3, 5}).fillers;
  frame.referent_id = "08-3";
  const auto made = EstablishEntity(frame, state.history.Find("08-3"), state, Context(), toks);

  EXPECT_EQ(made.spec.id, "09");
  EXPECT_EQ(made.spec.plot_type, PlotType::kLine);
  ASSERT_EQ(made.spec.entities.size(), 2u);
  EXPECT_EQ(made.spec.entities[0].slot, "MONTH");
  EXPECT_TRUE(made.spec.entities[0].IsAxis());
  EXPECT_EQ(made.spec.entities[1].slot, "CRIME_TYPE");
  EXPECT_EQ(made.spec.entities[1].value, "theft");
  EXPECT_EQ(made.spec.axes, std::vector<std::string>{"MONTH"});
  EXPECT_EQ(made.agent.role, Role::kAgent);
  EXPECT_EQ(made.agent.referent_id, "08-3");
  EXPECT_EQ(made.agent.response, AgentResponse::kCreated);
  EXPECT_EQ(state.history.size(), 2u);
  EXPECT_EQ(state.history.AtRank(1).id, "09");
  // Vector follows the final entity list.
  EXPECT_EQ(made.spec.semantic_vector,
            x.Vectorize(FillersFromEntities(made.spec.entities), VectorMode::kSoft));
  // 12 months, every row has a month.
  ASSERT_EQ(made.spec.data.rows.size(), 12u);
  EXPECT_EQ(made.spec.data.rows.front().key, "january");
}

TEST(Establish, CreateTheftDowntownIsBar) {
  const auto& x = Fixture().extractor();
  DialogueState state;
  const auto toks = Toks("can I see theft in the downtown area");
  ActionFrame frame;
  frame.intent = std::string(kCreateVis);
  frame.fillers = x.Extract(toks).fillers;
  const auto made = EstablishEntity(frame, nullptr, state, Context(), toks);
  EXPECT_EQ(made.spec.id, "01");
  EXPECT_EQ(made.spec.plot_type, PlotType::kBar);
  ASSERT_EQ(made.spec.entities.size(), 2u);
  EXPECT_EQ(made.spec.entities[0].slot, "CRIME_TYPE");
  EXPECT_EQ(made.spec.entities[0].value, "theft");
  EXPECT_EQ(made.spec.entities[1].slot, "NEIGHBORHOOD");
  EXPECT_EQ(made.spec.entities[1].value, "downtown");
  // Grouped by the categorical slot: one bar for theft.
  EXPECT_EQ(made.spec.axes, std::vector<std::string>{"CRIME_TYPE"});
  ASSERT_EQ(made.spec.data.rows.size(), 1u);
  EXPECT_EQ(made.spec.data.rows[0].key, "theft");
  EXPECT_GT(made.spec.data.rows[0].count, 0);
}

TEST(Establish, ModifyWithoutReferentThrowsAndLeavesState) {
  DialogueState state;
  ActionFrame frame;
  frame.intent = std::string(kModifyVis);
  const DialogueState before = state;
  EXPECT_THROW(EstablishEntity(frame, nullptr, state, Context(), Toks("show that by month")),
               UnresolvedReferenceError);
  EXPECT_EQ(state, before);
}

TEST(WindowManagement, CloseMaximizeAndClarify) {
  DialogueState state;
  state.history.Add(BuildSpec("08-3", {}, PlotType::kBar, 0, Context()));
  state.history.Add(BuildSpec("09", {}, PlotType::kBar, 1, Context()));
  ActionFrame frame;
  frame.intent = std::string(kWinMgmt);
  frame.referent_id = "09";
  frame.window_op = WindowOperation::kMaximize;
  auto agent = ApplyWindowManagement(frame, state);
  EXPECT_EQ(agent.response, AgentResponse::kWindowUpdated);
  EXPECT_EQ(state.history.size(), 2u);
  EXPECT_TRUE(state.history.Find("09")->layout.maximized);

  frame.referent_id = "08-3";
  frame.window_op = WindowOperation::kClose;
  agent = ApplyWindowManagement(frame, state);
  EXPECT_EQ(agent.response, AgentResponse::kWindowUpdated);
  ASSERT_EQ(state.history.size(), 1u);
  EXPECT_EQ(state.history.AtRank(1).id, "09");

  DialogueState empty;
  frame.referent_id.reset();
  EXPECT_EQ(ApplyWindowManagement(frame, empty).response, AgentResponse::kClarification);
  frame.referent_id = "77";
  EXPECT_EQ(ApplyWindowManagement(frame, state).response, AgentResponse::kClarification);
}

}  // namespace
}  // namespace vizref
