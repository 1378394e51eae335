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

#ifndef VIZREF_ENTITY_H_
#define VIZREF_ENTITY_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vizref/ontology.h"
#include "vizref/semantics.h"

namespace vizref {

// A slot that a visualization is about. With a value it restricts the data
// ("theft"); without one it names a dimension to plot along ("by month").
struct Entity {
  std::string slot;
  std::optional<std::string> value;
  std::string text;
  std::vector<std::string> terms;
  double score = 0.0;

  bool IsAxis() const { return !value.has_value(); }
  friend bool operator==(const Entity&, const Entity&) = default;
};

// Maps plural surface forms onto the ontology's singular value when the
// singular is a value of the same slot ("thefts" -> "theft",
// "knives" -> "knife"); otherwise returns the term unchanged.
std::string CanonicalValue(const KnowledgeOntology& ontology, std::size_t slot,
                           std::string_view term);

// Plain English singularization used when matching values against data:
// ies -> y, ves -> fe, trailing s dropped.
std::string Singularize(std::string_view word);

// Value is the first non-generic term of the filler's own slot found among
// its head words, longest phrase first.
Entity EntityFromFiller(const SlotFiller& filler, const KnowledgeOntology& ontology);
std::vector<Entity> EntitiesFromFillers(std::span<const SlotFiller> fillers,
                                        const KnowledgeOntology& ontology);

SlotFiller FillerFromEntity(const Entity& entity);
std::vector<SlotFiller> FillersFromEntities(std::span<const Entity> entities);

}  // namespace vizref

#endif  // VIZREF_ENTITY_H_
