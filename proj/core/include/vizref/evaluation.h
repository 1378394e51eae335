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

#ifndef VIZREF_EVALUATION_H_
#define VIZREF_EVALUATION_H_

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "vizref/corpus.h"
#include "vizref/crf.h"
#include "vizref/data_query.h"
#include "vizref/dialogue_manager.h"
#include "vizref/resolution.h"
#include "vizref/semantics.h"
#include "vizref/spans.h"
#include "vizref/spec_io.h"

namespace vizref {

struct Rate {
  std::size_t correct = 0;
  std::size_t total = 0;

  // Percentage in [0, 100]; 0 for an empty denominator.
  double Percent() const;
  void Add(bool ok) {
    ++total;
    if (ok) ++correct;
  }
  void Merge(const Rate& other) {
    correct += other.correct;
    total += other.total;
  }
  friend bool operator==(const Rate&, const Rate&) = default;
};

struct EvalConfig {
  // Gold tags when no model is given.
  const CrfModel* model = nullptr;
  std::vector<Window> windows = {Window::Of(0), Window::Of(1), Window::Unlimited()};
  VectorMode mode = VectorMode::kSoft;
  std::string decay = "linear";
  double cutoff = 0.2;
  std::size_t threads = 1;
};

struct DetectionRow {
  Segment segment = Segment::kSetup;
  Rate text;
  Rate tokens;
  Rate gesture;
};

struct ResolutionRow {
  Window window = Window::Unlimited();
  Segment segment = Segment::kSetup;
  Rate gesture;
  Rate text;
  Rate all;
};

struct PlotClassScore {
  PlotType type = PlotType::kBar;
  std::size_t support = 0;
  std::size_t true_positives = 0;
  std::size_t false_positives = 0;
  std::size_t false_negatives = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Bins of per-request slot recall: =0, <=25, <=50, <=75, <=100 percent.
inline constexpr std::array<int, 5> kQuartileEdges = {0, 25, 50, 75, 100};

struct EvalReport {
  std::string tag_source;
  std::string vector_mode;
  std::string decay;
  double cutoff = 0.0;
  std::size_t records = 0;
  std::size_t sessions = 0;

  SpanScores span;
  double token_accuracy = 0.0;
  std::vector<DetectionRow> detection;

  std::vector<ResolutionRow> resolution;
  // Window-1 resolutions that returned something other than the most recent
  // entry. Always zero for a correct resolver.
  std::size_t window1_violations = 0;

  std::size_t total_requests = 0;
  std::array<std::size_t, 5> quartile_bins{};
  std::array<std::size_t, 5> quartile_cumulative{};
  Rate exact_slot_set;
  Rate months_of_year_merge;
  // Requests editing a visualization with a temporal axis through a new
  // temporal filler: the temporal slot is swapped and every categorical
  // entity survives.
  Rate establishment_swap;

  std::array<PlotClassScore, 3> plot{};

  std::vector<std::pair<Window, Rate>> slot_accuracy;
};

EvalReport RunFullEval(std::span<const CorpusRecord> corpus, const SlotExtractor& extractor,
                       const CrimeTable* table, const EvalConfig& config = {});

std::string ReportToText(const EvalReport& report);
Json ReportToJson(const EvalReport& report);

// Drives a DialogueEngine through one session with annotated intents,
// window operations and gestures; tags come from `model` or the gold
// annotation. Returns the serialized transcript.
std::string ReplaySession(std::span<const CorpusRecord> session, const SlotExtractor& extractor,
                          const CrimeTable* table, const EngineConfig& config,
                          const CrfModel* model = nullptr);

// Gold spec as it would sit in the history: scored entities, vector, data.
VisualizationSpec MaterializeGoldSpec(const GoldSpec& gold, std::size_t turn,
                                      const SlotExtractor& extractor, const CrimeTable* table,
                                      VectorMode mode);

}  // namespace vizref

#endif  // VIZREF_EVALUATION_H_
