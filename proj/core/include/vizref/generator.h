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

#ifndef VIZREF_GENERATOR_H_
#define VIZREF_GENERATOR_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "vizref/corpus.h"
#include "vizref/ontology.h"

namespace vizref {

struct GeneratorConfig {
  std::uint64_t seed = 7;
  std::size_t sessions = 16;
  std::size_t min_cars = 24;
  std::size_t max_cars = 32;
  std::size_t max_setup = 6;
  std::size_t max_conclusion = 6;
  // Request mix; window management takes the remainder.
  double p_create = 0.45;
  double p_modify = 0.37;
  double p_close = 0.60;
  double p_most_recent = 0.70;
  double p_gesture = 0.35;
  double p_descriptive = 0.50;
  double p_setup_reference = 0.20;
  double p_conclusion_reference = 0.15;
  double p_standalone_gesture = 0.10;
  // Annotators label rule-line charts as line and rule-heatmaps (spatial
  // axis, no cue) as heatmap only this often; the rest are bar graphs.
  double p_line_label = 0.60;
  double p_heatmap_label = 0.40;
  // Rule-bar charts with a spatial entity that annotators drew as heatmaps.
  double p_spatial_heatmap_label = 0.15;
  double p_question_mark = 0.30;
};

// Template grammar over CAR-shaped sessions with gold labels by
// construction. Output depends only on the ontology and the config.
std::vector<CorpusRecord> GenerateSyntheticCorpus(const KnowledgeOntology& ontology,
                                                  const GeneratorConfig& config = {});

// Every non-ontology word the templates can emit, sorted.
std::vector<std::string> GeneratorVocabulary();

}  // namespace vizref

#endif  // VIZREF_GENERATOR_H_
