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


#ifndef VIZREF_TESTS_TEST_SUPPORT_H_
#define VIZREF_TESTS_TEST_SUPPORT_H_

#include <filesystem>
#include <string_view>
#include <vector>

#include "vizref/corpus.h"
#include "vizref/crf.h"
#include "vizref/generator.h"
#include "vizref/resources.h"
#include "vizref/text.h"

namespace vizref::testing {

inline std::filesystem::path DataDir() { return VIZREF_DATA_DIR; }

inline const Resources& Fixture() {
  static const Resources resources(ResourcePaths::InDirectory(DataDir()));
  return resources;
}

// Seed 7, 16 sessions.
inline const std::vector<CorpusRecord>& FixtureCorpus() {
  static const std::vector<CorpusRecord> corpus = GenerateSyntheticCorpus(Fixture().ontology());
  return corpus;
}

// CRF trained on the fixture corpus with default settings.
inline const CrfModel& FixtureModel() {
  static const CrfModel model = TrainCrf(ToTaggedUtterances(FixtureCorpus())).model;
  return model;
}

inline std::vector<Token> Toks(std::string_view text) { return PrepareUtterance(text).tokens; }

inline std::vector<Token> Words(std::initializer_list<std::pair<const char*, Pos>> words) {
  std::vector<Token> out;
  for (const auto& [w, p] : words) out.push_back({w, p});
  return out;
}

}  // namespace vizref::testing

#endif  // VIZREF_TESTS_TEST_SUPPORT_H_
