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

#include "vizref/semantics.h"

#include <algorithm>
#include <numeric>

#include "vizref/errors.h"

namespace vizref {

bool SemanticVector::IsZero() const {
  return std::all_of(values.begin(), values.end(), [](double v) { return v == 0.0; });
}

std::string_view VectorModeName(VectorMode mode) {
  return mode == VectorMode::kHard ? "hard" : "soft";
}

VectorMode ParseVectorMode(std::string_view name) {
  if (name == "hard") return VectorMode::kHard;
  if (name == "soft") return VectorMode::kSoft;
  throw ArgumentError("vector mode must be 'hard' or 'soft', got '" + std::string(name) + "'");
}

namespace {

std::vector<std::string> LowerWords(std::span<const Token> tokens, TokenSpan span) {
  std::vector<std::string> out;
  for (std::size_t i = span.begin; i < span.end; ++i) out.push_back(ToLower(tokens[i].surface));
  return out;
}

// Only "of" or "of" + determiner separates the two spans.
bool LinkedByOf(std::span<const Token> tokens, const SlotCandidate& left,
                const SlotCandidate& right) {
  const std::size_t gap = right.span.begin - left.span.end;
  if (right.span.begin < left.span.end || gap == 0 || gap > 2) return false;
  if (ToLower(tokens[left.span.end].surface) != "of") return false;
  return gap == 1 || tokens[left.span.end + 1].pos == Pos::kDet;
}

// Longest first, then highest score, then leftmost; greedily keep what does
// not overlap an accepted span.
std::vector<SlotCandidate> ResolveOverlaps(std::vector<SlotCandidate> candidates) {
  std::sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
    if (a.span.size() != b.span.size()) return a.span.size() > b.span.size();
    if (a.score != b.score) return a.score > b.score;
    if (a.span.begin != b.span.begin) return a.span.begin < b.span.begin;
    return a.slot_index < b.slot_index;
  });
  std::vector<SlotCandidate> accepted;
  for (const SlotCandidate& c : candidates) {
    const bool clash = std::any_of(accepted.begin(), accepted.end(),
                                   [&](const auto& a) { return a.span.Overlaps(c.span); });
    if (!clash) accepted.push_back(c);
  }
  std::sort(accepted.begin(), accepted.end(),
            [](const auto& a, const auto& b) { return a.span.begin < b.span.begin; });
  return accepted;
}

SlotFiller ToFiller(std::span<const Token> tokens, const SlotCandidate& head, TokenSpan span) {
  SlotFiller f;
  f.span = span;
  f.text = JoinSurface(tokens, span.begin, span.end);
  f.slot = head.slot;
  f.score = head.score;
  f.head_terms = LowerWords(tokens, head.span);
  return f;
}

std::vector<SlotFiller> MergeLinked(std::span<const Token> tokens,
                                    const std::vector<SlotCandidate>& ordered) {
  std::vector<SlotFiller> out;
  std::size_t i = 0;
  while (i < ordered.size()) {
    std::size_t j = i;
    while (j + 1 < ordered.size() && LinkedByOf(tokens, ordered[j], ordered[j + 1])) ++j;
    out.push_back(ToFiller(tokens, ordered[i], {ordered[i].span.begin, ordered[j].span.end}));
    i = j + 1;
  }
  return out;
}

}  // namespace

std::vector<SlotCandidate> DetectSlotCandidates(std::span<const Token> tokens,
                                                const SlotPrototypes& prototypes,
                                                const EmbeddingLexicon& lexicon,
                                                double threshold) {
  std::vector<SlotCandidate> out;
  auto consider = [&](TokenSpan span) {
    const auto words = LowerWords(tokens, span);
    if (auto match = NearestSlot(words, prototypes, lexicon, threshold)) {
      out.push_back({span, match->slot, match->slot_index, match->score});
    }
  };
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (!IsContentPos(tokens[i].pos)) continue;
    consider({i, i + 1});
    if (i + 1 < tokens.size() && IsContentPos(tokens[i + 1].pos)) consider({i, i + 2});
  }
  return out;
}

PrunedFillers PosPatternPruner::Prune(std::span<const SlotCandidate> candidates,
                                      std::span<const Token> tokens,
                                      std::optional<TokenSpan> reference) const {
  std::vector<SlotCandidate> outside, inside;
  for (const SlotCandidate& c : candidates) {
    if (c.span.end > tokens.size()) throw ArgumentError("slot candidate outside utterance");
    if (reference && reference->Overlaps(c.span)) {
      inside.push_back(c);
    } else {
      outside.push_back(c);
    }
  }
  PrunedFillers result;
  result.fillers = MergeLinked(tokens, ResolveOverlaps(std::move(outside)));
  for (const SlotCandidate& c : ResolveOverlaps(std::move(inside))) {
    result.reference_fillers.push_back(ToFiller(tokens, c, c.span));
  }
  return result;
}

PrunedFillers PruneAndMerge(std::span<const SlotCandidate> candidates,
                            std::span<const Token> tokens, std::optional<TokenSpan> reference) {
  return PosPatternPruner().Prune(candidates, tokens, reference);
}

SemanticVector Vectorize(std::span<const SlotFiller> fillers, const SlotPrototypes& prototypes,
                         const EmbeddingLexicon& lexicon, VectorMode mode) {
  SemanticVector out;
  if (fillers.empty()) return out;
  if (prototypes.size() != kNumParentSlots) throw ArgumentError("expected 11 slot prototypes");
  if (mode == VectorMode::kHard) {
    std::array<std::size_t, kNumParentSlots> counts{};
    for (const SlotFiller& f : fillers) {
      std::size_t index = kNumParentSlots;
      for (std::size_t i = 0; i < prototypes.size(); ++i) {
        if (prototypes.at(i).slot == f.slot) index = i;
      }
      if (index == kNumParentSlots) throw ArgumentError("filler has unknown slot " + f.slot);
      out.values[index] += std::clamp(f.score, 0.0, 1.0);
      ++counts[index];
    }
    for (std::size_t i = 0; i < kNumParentSlots; ++i) {
      if (counts[i] > 0) out.values[i] /= static_cast<double>(counts[i]);
    }
    return out;
  }
  for (const SlotFiller& f : fillers) {
    const Vector embedding = EmbedPhrase(f.head_terms, lexicon);
    const std::vector<double> sims = prototypes.Similarities(embedding);
    for (std::size_t i = 0; i < kNumParentSlots; ++i) {
      out.values[i] += std::clamp(sims[i], 0.0, 1.0);
    }
  }
  for (double& v : out.values) v /= static_cast<double>(fillers.size());
  return out;
}

SlotExtractor::SlotExtractor(const KnowledgeOntology& ontology, const EmbeddingLexicon& lexicon,
                             const SlotPrototypes& prototypes, double threshold,
                             std::shared_ptr<const FillerPruner> pruner)
    : ontology_(&ontology),
      lexicon_(&lexicon),
      prototypes_(&prototypes),
      threshold_(threshold),
      pruner_(pruner ? std::move(pruner) : std::make_shared<PosPatternPruner>()) {
  if (threshold < 0.0 || threshold > 1.0) throw ArgumentError("slot threshold must be in [0,1]");
}

std::vector<SlotCandidate> SlotExtractor::DetectCandidates(std::span<const Token> tokens) const {
  return DetectSlotCandidates(tokens, *prototypes_, *lexicon_, threshold_);
}

PrunedFillers SlotExtractor::Extract(std::span<const Token> tokens,
                                     std::optional<TokenSpan> reference) const {
  const auto candidates = DetectCandidates(tokens);
  return pruner_->Prune(candidates, tokens, reference);
}

SemanticVector SlotExtractor::Vectorize(std::span<const SlotFiller> fillers,
                                        VectorMode mode) const {
  return vizref::Vectorize(fillers, *prototypes_, *lexicon_, mode);
}

SlotFiller SlotExtractor::MakeFiller(std::string_view slot, std::string_view text,
                                     std::vector<std::string> head_terms) const {
  const std::size_t index = ontology_->RequireIndex(slot);
  SlotFiller f;
  f.text = std::string(text);
  f.slot = std::string(slot);
  for (auto& w : head_terms) w = ToLower(w);
  f.head_terms = std::move(head_terms);
  const Vector v = EmbedPhrase(f.head_terms, *lexicon_);
  f.score = std::max(0.0, Cosine(v, prototypes_->at(index).vector));
  return f;
}

}  // namespace vizref
