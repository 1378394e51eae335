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

#ifndef VIZREF_ONTOLOGY_H_
#define VIZREF_ONTOLOGY_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace vizref {

inline constexpr std::size_t kNumParentSlots = 11;

enum class SlotKind { kTemporal, kCategorical, kSpatial };

std::string_view SlotKindName(SlotKind kind);
SlotKind ParseSlotKind(std::string_view name);

struct ParentSlot {
  std::string name;
  SlotKind kind = SlotKind::kCategorical;
  // Lowercase lexical values; multi-word terms are space separated.
  std::vector<std::string> terms;
  // Subset of `terms` that names the dimension itself ("month", "crimes")
  // rather than a value of it ("january", "theft").
  std::vector<std::string> generic_terms;
};

struct TermEntry {
  std::size_t slot = 0;
  bool generic = false;
};

// Eleven parent slots in file order. The order defines the dimension order of
// every semantic vector.
class KnowledgeOntology {
 public:
  explicit KnowledgeOntology(std::vector<ParentSlot> slots);

  std::size_t size() const { return slots_.size(); }
  const ParentSlot& slot(std::size_t index) const { return slots_.at(index); }
  const std::vector<ParentSlot>& slots() const { return slots_; }

  std::optional<std::size_t> IndexOf(std::string_view slot_name) const;
  // Throws ArgumentError when the slot is unknown.
  std::size_t RequireIndex(std::string_view slot_name) const;
  SlotKind KindOf(std::string_view slot_name) const;

  std::optional<TermEntry> FindTerm(std::string_view term) const;

 private:
  std::vector<ParentSlot> slots_;
  std::unordered_map<std::string, std::size_t> slot_index_;
  std::unordered_map<std::string, TermEntry> term_index_;
};

// Parses the ontology JSON document. Schema errors name the offending field.
KnowledgeOntology LoadOntology(const std::filesystem::path& path);
KnowledgeOntology ParseOntology(std::string_view json_text);

using Vector = std::vector<double>;

class EmbeddingLexicon {
 public:
  EmbeddingLexicon(std::size_t dimension,
                   std::unordered_map<std::string, Vector> entries);

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return entries_.size(); }
  // Lookup is on the lowercased word.
  const Vector* Find(std::string_view word) const;
  bool Contains(std::string_view word) const { return Find(word) != nullptr; }

 private:
  std::size_t dimension_;
  std::unordered_map<std::string, Vector> entries_;
};

// word2vec text format without a header line: `word v1 ... vD`.
EmbeddingLexicon LoadEmbeddings(const std::filesystem::path& path);
EmbeddingLexicon ParseEmbeddings(std::string_view text);

// Unit-normalized mean of the in-vocabulary token vectors. A phrase without
// any in-vocabulary token yields the zero vector.
Vector EmbedPhrase(std::span<const std::string> tokens,
                   const EmbeddingLexicon& lexicon);

double Norm(std::span<const double> v);
double Dot(std::span<const double> a, std::span<const double> b);
// Zero when either vector is zero.
double Cosine(std::span<const double> a, std::span<const double> b);
std::vector<std::string> SplitWords(std::string_view phrase);

struct SlotPrototype {
  std::string slot;
  Vector vector;
};

struct SlotMatch {
  std::string slot;
  std::size_t slot_index = 0;
  double score = 0.0;
};

// Unit-normalized mean of slot term embeddings, one prototype per slot in
// ontology order. Immutable once built.
class SlotPrototypes {
 public:
  SlotPrototypes(const KnowledgeOntology& ontology,
                 const EmbeddingLexicon& lexicon,
                 std::span<const std::string> excluded_terms = {});

  std::size_t size() const { return prototypes_.size(); }
  const SlotPrototype& at(std::size_t index) const {
    return prototypes_.at(index);
  }
  const std::vector<SlotPrototype>& all() const { return prototypes_; }

  // Cosine of `phrase_vector` against every prototype, ontology order.
  std::vector<double> Similarities(std::span<const double> phrase_vector) const;

 private:
  std::vector<SlotPrototype> prototypes_;
};

inline constexpr double kDefaultSlotThreshold = 0.35;

// Best slot by cosine with the phrase embedding, if it reaches `threshold`.
// Ties go to the earlier slot.
std::optional<SlotMatch> NearestSlot(std::span<const std::string> phrase,
                                     const SlotPrototypes& prototypes,
                                     const EmbeddingLexicon& lexicon,
                                     double threshold = kDefaultSlotThreshold);

std::optional<SlotMatch> NearestSlotForVector(std::span<const double> vector,
                                              const SlotPrototypes& prototypes,
                                              double threshold);

}  // namespace vizref

#endif  // VIZREF_ONTOLOGY_H_
