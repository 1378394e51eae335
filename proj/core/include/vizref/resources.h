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


#ifndef VIZREF_RESOURCES_H_
#define VIZREF_RESOURCES_H_

#include <filesystem>
#include <memory>
#include <optional>

#include "vizref/data_query.h"
#include "vizref/ontology.h"
#include "vizref/semantics.h"

namespace vizref {

struct ResourcePaths {
  std::filesystem::path ontology;
  std::filesystem::path embeddings;
  // Optional incident table; specs carry no data rows without it.
  std::optional<std::filesystem::path> table;

  // ontology.json, embeddings.txt and crimes.csv under `dir`.
  static ResourcePaths InDirectory(const std::filesystem::path& dir);
};

// Owns the ontology, lexicon, prototypes and table and the extractor that
// points into them. Not copyable or movable.
class Resources {
 public:
  explicit Resources(const ResourcePaths& paths, double threshold = kDefaultSlotThreshold);
  Resources(const Resources&) = delete;
  Resources& operator=(const Resources&) = delete;

  const KnowledgeOntology& ontology() const { return *ontology_; }
  const EmbeddingLexicon& lexicon() const { return *lexicon_; }
  const SlotPrototypes& prototypes() const { return *prototypes_; }
  const SlotExtractor& extractor() const { return *extractor_; }
  const CrimeTable* table() const { return table_.get(); }

 private:
  std::unique_ptr<KnowledgeOntology> ontology_;
  std::unique_ptr<EmbeddingLexicon> lexicon_;
  std::unique_ptr<SlotPrototypes> prototypes_;
  std::unique_ptr<SlotExtractor> extractor_;
  std::unique_ptr<CrimeTable> table_;
};

}  // namespace vizref

#endif  // VIZREF_RESOURCES_H_
