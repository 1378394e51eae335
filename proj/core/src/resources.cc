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


#include "vizref/resources.h"

namespace vizref {

ResourcePaths ResourcePaths::InDirectory(const std::filesystem::path& dir) {
  return {dir / "ontology.json", dir / "embeddings.txt", dir / "crimes.csv"};
}

Resources::Resources(const ResourcePaths& paths, double threshold)
    : ontology_(std::make_unique<KnowledgeOntology>(LoadOntology(paths.ontology))),
      lexicon_(std::make_unique<EmbeddingLexicon>(LoadEmbeddings(paths.embeddings))),
      prototypes_(std::make_unique<SlotPrototypes>(*ontology_, *lexicon_)),
      extractor_(std::make_unique<SlotExtractor>(*ontology_, *lexicon_, *prototypes_, threshold)) {
  if (paths.table) table_ = std::make_unique<CrimeTable>(LoadCrimeTable(*paths.table));
}

}  // namespace vizref
