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

#include "vizref/entity.h"

#include "vizref/text.h"

namespace vizref {

std::string Singularize(std::string_view word) {
  std::string w = ToLower(word);
  auto ends_with = [&](std::string_view suffix) {
    return w.size() > suffix.size() + 1 && w.compare(w.size() - suffix.size(), suffix.size(),
                                                      suffix) == 0;
  };
  if (ends_with("ies")) return w.substr(0, w.size() - 3) + "y";
  if (ends_with("ves")) return w.substr(0, w.size() - 3) + "fe";
  if (ends_with("ss")) return w;
  if (ends_with("s")) return w.substr(0, w.size() - 1);
  return w;
}

std::string CanonicalValue(const KnowledgeOntology& ontology, std::size_t slot,
                           std::string_view term) {
  std::string lowered = ToLower(term);
  const std::string singular = Singularize(lowered);
  if (singular != lowered) {
    if (auto entry = ontology.FindTerm(singular); entry && entry->slot == slot && !entry->generic) {
      return singular;
    }
  }
  return lowered;
}

Entity EntityFromFiller(const SlotFiller& filler, const KnowledgeOntology& ontology) {
  Entity e;
  e.slot = filler.slot;
  e.text = filler.text;
  e.terms = filler.head_terms;
  e.score = filler.score;
  const std::size_t slot = ontology.RequireIndex(filler.slot);
  const auto& words = filler.head_terms;
  for (std::size_t len = words.size(); len >= 1 && !e.value; --len) {
    for (std::size_t i = 0; i + len <= words.size(); ++i) {
      std::string phrase;
      for (std::size_t k = i; k < i + len; ++k) {
        if (k > i) phrase += ' ';
        phrase += words[k];
      }
      auto entry = ontology.FindTerm(phrase);
      if (entry && entry->slot == slot && !entry->generic) {
        e.value = CanonicalValue(ontology, slot, phrase);
        break;
      }
    }
  }
  return e;
}

std::vector<Entity> EntitiesFromFillers(std::span<const SlotFiller> fillers,
                                        const KnowledgeOntology& ontology) {
  std::vector<Entity> out;
  out.reserve(fillers.size());
  for (const SlotFiller& f : fillers) out.push_back(EntityFromFiller(f, ontology));
  return out;
}

SlotFiller FillerFromEntity(const Entity& entity) {
  SlotFiller f;
  f.slot = entity.slot;
  f.text = entity.text;
  f.score = entity.score;
  f.head_terms = entity.terms;
  return f;
}

std::vector<SlotFiller> FillersFromEntities(std::span<const Entity> entities) {
  std::vector<SlotFiller> out;
  out.reserve(entities.size());
  for (const Entity& e : entities) out.push_back(FillerFromEntity(e));
  return out;
}

}  // namespace vizref
