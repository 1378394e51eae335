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


#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "vizref/errors.h"
#include "vizref/spec_io.h"

namespace vizref {
namespace {

VisualizationSpec SampleSpec() {
  VisualizationSpec s;
  s.id = "09";
  s.plot_type = PlotType::kLine;
  s.axes = {"MONTH"};
  Entity month;
  month.slot = "MONTH";
  month.text = "months of the year";
  month.terms = {"months"};
  month.score = 0.875;
  Entity theft;
  theft.slot = "CRIME_TYPE";
  theft.value = "theft";
  theft.text = "theft";
  theft.terms = {"theft"};
  theft.score = 0.5;
  s.entities = {month, theft};
  s.title = "theft by month";
  s.query.filters = {{"CRIME_TYPE", {"theft"}}};
  s.query.group_by = "MONTH";
  s.data.rows = {{"january", 12}, {"february", 7}};
  for (std::size_t i = 0; i < kNumParentSlots; ++i) s.semantic_vector.values[i] = 0.125 * (i % 3);
  s.layout.position = 1;
  s.layout.maximized = true;
  s.layout.moves = 2;
  s.created_at = 4;
  return s;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(SpecIo, MatchesGoldenFile) {
  const std::string path = std::string(VIZREF_GOLDEN_DIR) + "/spec_v1.json";
  const std::string text = SpecToJson(SampleSpec()).dump(2) + "\n";
  if (std::getenv("VIZREF_UPDATE_GOLDEN")) {
    std::ofstream(path) << text;
  }
  EXPECT_EQ(text, ReadFile(path));
}

TEST(SpecIo, KeyOrderIsFixed) {
  const Json j = SpecToJson(SampleSpec());
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  const std::vector<std::string> expected = {"version", "id",    "plot_type",       "axes",
                                             "entities", "title", "data", "semantic_vector",
                                             "layout",  "created_at"};
  EXPECT_EQ(keys, expected);
}

TEST(SpecIo, RoundTripIsLossless) {
  const VisualizationSpec s = SampleSpec();
  EXPECT_EQ(SpecFromJson(SpecToJson(s)), s);
  EXPECT_EQ(SpecFromJson(Json::parse(Serialize(SpecToJson(s)))), s);
}

TEST(SpecIo, MissingFieldsAndVersionAreSchemaErrors) {
  Json j = SpecToJson(SampleSpec());
  j.erase("title");
  EXPECT_THROW(SpecFromJson(j), SchemaError);
  j = SpecToJson(SampleSpec());
  j["version"] = "vizref.spec/0";
  EXPECT_THROW(SpecFromJson(j), SchemaError);
}

TEST(SpecIo, ScreenPayloadListsSpecsAndLayout) {
  DialogueHistory h;
  h.Add(SampleSpec());
  const Json screen = ScreenPayload(h);
  ASSERT_EQ(screen["visualizations"].size(), 1u);
  EXPECT_EQ(screen["visualizations"][0], SpecToJson(SampleSpec()));
  EXPECT_EQ(screen["layout"][0]["id"], "09");
  EXPECT_EQ(screen["layout"][0]["maximized"], true);
  EXPECT_EQ(ScreenPayload(DialogueHistory{})["visualizations"].size(), 0u);
}

}  // namespace
}  // namespace vizref
