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


#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "vizref/corpus.h"
#include "vizref/crf.h"
#include "vizref/generator.h"
#include "vizref/history.h"
#include "vizref/resolution.h"
#include "vizref/resources.h"
#include "vizref/semantics.h"
#include "vizref/text.h"

namespace vizref {
namespace {

const Resources& Shared() {
  static const Resources resources(ResourcePaths::InDirectory(VIZREF_DATA_DIR));
  return resources;
}

const std::vector<TaggedUtterance>& Corpus(std::size_t sessions) {
  static std::vector<TaggedUtterance> cache;
  static std::size_t cached = 0;
  if (cached != sessions) {
    GeneratorConfig config;
    config.sessions = sessions;
    cache = ToTaggedUtterances(GenerateSyntheticCorpus(Shared().ontology(), config));
    cached = sessions;
  }
  return cache;
}

const CrfModel& Model() {
  static const CrfModel model = TrainCrf(Corpus(16)).model;
  return model;
}

void BM_Decode(benchmark::State& state) {
  const auto& model = Model();
  std::string text;
  for (int i = 0; i < state.range(0); ++i) text += (i % 3 == 0 ? "that graph " : "show thefts ");
  const auto tokens = PrepareUtterance(text).tokens;
  for (auto _ : state) benchmark::DoNotOptimize(Decode(model, tokens));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(tokens.size()));
}
BENCHMARK(BM_Decode)->Arg(4)->Arg(16)->Arg(64);

void BM_Train(benchmark::State& state) {
  const auto& corpus = Corpus(static_cast<std::size_t>(state.range(0)));
  TrainConfig config;
  config.max_iterations = 50;
  for (auto _ : state) benchmark::DoNotOptimize(TrainCrf(corpus, config).model);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(corpus.size()));
}
BENCHMARK(BM_Train)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_Resolve(benchmark::State& state) {
  const auto& extractor = Shared().extractor();
  const char* phrases[] = {"thefts by month", "burglaries downtown", "assaults by day",
                           "robberies in the park", "vandalism by year", "weapons by season"};
  DialogueHistory history;
  for (int i = 0; i < state.range(0); ++i) {
    VisualizationSpec spec;
    spec.id = FormatSpecId(static_cast<std::size_t>(i + 1));
    const auto fillers = extractor.Extract(PrepareUtterance(phrases[i % 6]).tokens).fillers;
    spec.semantic_vector = extractor.Vectorize(fillers, VectorMode::kSoft);
    history.Add(std::move(spec));
  }
  ActionFrame frame;
  const auto tokens = PrepareUtterance("close the theft one").tokens;
  frame.text_ref = TextReference{{1, 4}, "the theft one"};
  frame.reference_fillers = extractor.Extract(tokens, TokenSpan{1, 4}).reference_fillers;
  const SemanticVector expression = extractor.Vectorize(frame.reference_fillers, VectorMode::kSoft);
  const ResolverConfig config;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ResolveReference(frame, history, expression, config));
  }
}
BENCHMARK(BM_Resolve)->Arg(4)->Arg(32)->Arg(256);

}  // namespace
}  // namespace vizref

BENCHMARK_MAIN();
