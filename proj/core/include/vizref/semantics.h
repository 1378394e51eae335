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

#ifndef VIZREF_SEMANTICS_H_
#define VIZREF_SEMANTICS_H_

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vizref/ontology.h"
#include "vizref/text.h"

namespace vizref {

struct SlotCandidate {
  TokenSpan span;
  std::string slot;
  std::size_t slot_index = 0;
  double score = 0.0;

  friend bool operator==(const SlotCandidate&, const SlotCandidate&) = default;
};

struct SlotFiller {
  TokenSpan span;
  std::string text;
  std::string slot;
  double score = 0.0;
  // Lowercased words of the candidate that fixed the slot; the filler is
  // embedded from these. For "months of the year" this is {"months"}.
  std::vector<std::string> head_terms;

  friend bool operator==(const SlotFiller&, const SlotFiller&) = default;
};

// One value per ontology slot, ontology order, each in [0, 1].
struct SemanticVector {
  std::array<double, kNumParentSlots> values{};

  bool IsZero() const;
  friend bool operator==(const SemanticVector&, const SemanticVector&) = default;
};

enum class VectorMode { kHard, kSoft };
std::string_view VectorModeName(VectorMode mode);
VectorMode ParseVectorMode(std::string_view name);

// Unigrams and contiguous bigrams of content words (NOUN, ADJ, NUM, X)
// whose nearest slot clears `threshold`. Overlaps are kept for pruning.
std::vector<SlotCandidate> DetectSlotCandidates(std::span<const Token> tokens,
                                                const SlotPrototypes& prototypes,
                                                const EmbeddingLexicon& lexicon,
                                                double threshold = kDefaultSlotThreshold);

struct PrunedFillers {
  // Slot fillers outside the referring expression; disjoint, in token order.
  std::vector<SlotFiller> fillers;
  // Candidates that fell inside the referring expression ("the theft one").
  // They describe the referent, not the requested visualization.
  std::vector<SlotFiller> reference_fillers;
};

// Linguistic annotator seam: decides which candidates survive and which
// join into one filler. A dependency-parse implementation can replace the
// default POS-pattern rules.
class FillerPruner {
 public:
  virtual ~FillerPruner() = default;
  virtual PrunedFillers Prune(std::span<const SlotCandidate> candidates,
                              std::span<const Token> tokens,
                              std::optional<TokenSpan> reference) const = 0;
};

// Rules, in order:
//  (a) candidates overlapping the referring expression leave the filler list;
//  (c) overlapping candidates resolve to the longest, then highest score;
//  (b) neighbours linked by "of" (optionally "of" + determiner) merge into
//      one filler carrying the slot of the first candidate.
class PosPatternPruner : public FillerPruner {
 public:
  PrunedFillers Prune(std::span<const SlotCandidate> candidates, std::span<const Token> tokens,
                      std::optional<TokenSpan> reference) const override;
};

PrunedFillers PruneAndMerge(std::span<const SlotCandidate> candidates,
                            std::span<const Token> tokens,
                            std::optional<TokenSpan> reference = std::nullopt);

// hard: dimension i is the mean match score of fillers assigned to slot i.
// soft: every filler contributes its clamped cosine to every prototype and
//       each dimension is the mean over fillers.
SemanticVector Vectorize(std::span<const SlotFiller> fillers, const SlotPrototypes& prototypes,
                         const EmbeddingLexicon& lexicon, VectorMode mode);

// Bundles the immutable resources that slot extraction needs.
class SlotExtractor {
 public:
  SlotExtractor(const KnowledgeOntology& ontology, const EmbeddingLexicon& lexicon,
                const SlotPrototypes& prototypes, double threshold = kDefaultSlotThreshold,
                std::shared_ptr<const FillerPruner> pruner = nullptr);

  std::vector<SlotCandidate> DetectCandidates(std::span<const Token> tokens) const;
  PrunedFillers Extract(std::span<const Token> tokens,
                        std::optional<TokenSpan> reference = std::nullopt) const;
  SemanticVector Vectorize(std::span<const SlotFiller> fillers, VectorMode mode) const;

  // Filler for an entity known only by its words (gold annotations, API
  // callers). Score is the cosine with the slot prototype, floored at zero.
  SlotFiller MakeFiller(std::string_view slot, std::string_view text,
                        std::vector<std::string> head_terms) const;

  const KnowledgeOntology& ontology() const { return *ontology_; }
  const EmbeddingLexicon& lexicon() const { return *lexicon_; }
  const SlotPrototypes& prototypes() const { return *prototypes_; }
  double threshold() const { return threshold_; }

 private:
  const KnowledgeOntology* ontology_;
  const EmbeddingLexicon* lexicon_;
  const SlotPrototypes* prototypes_;
  double threshold_;
  std::shared_ptr<const FillerPruner> pruner_;
};

}  // namespace vizref

#endif  // VIZREF_SEMANTICS_H_
