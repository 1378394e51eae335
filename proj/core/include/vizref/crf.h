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

#ifndef VIZREF_CRF_H_
#define VIZREF_CRF_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "vizref/text.h"

namespace vizref {

// IOB2 reference tags. Enumerator order is the decoder's tie-break order.
enum class Tag : std::uint8_t { kBegin = 0, kInside = 1, kOutside = 2 };
inline constexpr std::size_t kNumTags = 3;
inline constexpr std::array<Tag, kNumTags> kAllTags = {Tag::kBegin, Tag::kInside,
                                                       Tag::kOutside};

std::string_view TagName(Tag tag);  // "B-REF", "I-REF", "O"
std::optional<Tag> ParseTag(std::string_view name);

// I-REF may not start a sequence or follow O.
bool TransitionAllowed(std::optional<Tag> previous, Tag next);
bool IsValidIob2(std::span<const Tag> tags);

struct TaggedUtterance {
  std::vector<Token> tokens;
  std::vector<Tag> tags;
};

inline constexpr int kFeatureTemplateVersion = 1;

// bias, word, shape, 3-char prefix/suffix, POS, and word/POS at -1/+1 with
// BOS/EOS markers at the boundaries. Pure function of its inputs.
std::vector<std::string> ExtractFeatures(std::span<const Token> tokens, std::size_t index);

// "Xxx", "dd-d": character classes with runs collapsed.
std::string WordShape(std::string_view word);

class CrfModel {
 public:
  CrfModel() = default;

  std::size_t num_features() const { return feature_names_.size(); }
  const std::string& feature_name(std::size_t index) const { return feature_names_.at(index); }
  std::optional<std::size_t> FeatureIndex(std::string_view name) const;
  // Returns the existing index when the feature is already known.
  std::size_t AddFeature(const std::string& name);

  double emission(std::size_t feature, Tag tag) const {
    return emissions_[feature * kNumTags + static_cast<std::size_t>(tag)];
  }
  void set_emission(std::size_t feature, Tag tag, double w) {
    emissions_[feature * kNumTags + static_cast<std::size_t>(tag)] = w;
  }
  double transition(Tag from, Tag to) const {
    return transitions_[static_cast<std::size_t>(from) * kNumTags + static_cast<std::size_t>(to)];
  }
  void set_transition(Tag from, Tag to, double w) {
    transitions_[static_cast<std::size_t>(from) * kNumTags + static_cast<std::size_t>(to)] = w;
  }
  double start(Tag tag) const { return start_[static_cast<std::size_t>(tag)]; }
  void set_start(Tag tag, double w) { start_[static_cast<std::size_t>(tag)] = w; }

  // Flat parameter layout used by the trainer: emissions, transitions, start.
  std::size_t num_parameters() const { return emissions_.size() + transitions_.size() + kNumTags; }
  std::vector<double> Parameters() const;
  void SetParameters(std::span<const double> params);

  // Per-position, per-tag emission scores; unknown features contribute zero.
  std::vector<std::array<double, kNumTags>> EmissionScores(std::span<const Token> tokens) const;

  int template_version = kFeatureTemplateVersion;
  double c1 = 0.10;
  double c2 = 0.10;

  friend bool operator==(const CrfModel&, const CrfModel&) = default;

 private:
  std::vector<std::string> feature_names_;
  std::unordered_map<std::string, std::size_t> feature_index_;
  std::vector<double> emissions_;
  std::array<double, kNumTags * kNumTags> transitions_{};
  std::array<double, kNumTags> start_{};
};

// Constrained Viterbi. Among equal-scoring sequences the lexicographically
// smallest under B-REF < I-REF < O wins. Throws ArgumentError on empty input.
std::vector<Tag> Decode(const CrfModel& model, std::span<const Token> tokens);

struct TrainConfig {
  double c1 = 0.10;
  double c2 = 0.10;
  int max_iterations = 200;
  // Stop when |pseudo-gradient| / max(1, |w|) drops below this.
  double epsilon = 1e-5;
  int history = 6;
};

struct TrainResult {
  CrfModel model;
  // Penalized objective at the start and after every accepted iteration.
  std::vector<double> loss_history;
  int iterations = 0;
  bool converged = false;
  std::size_t used_utterances = 0;
  std::size_t skipped_all_outside = 0;
};

// Elastic-net penalized conditional log-likelihood:
//   sum_i -log p(y_i | x_i) + c1 |w|_1 + c2 |w|^2
// minimized with OWL-QN. Utterances tagged only O are skipped. Deterministic
// for a given corpus order. Throws ArgumentError when nothing is trainable and
// NumericalError on a non-finite objective.
TrainResult TrainCrf(std::span<const TaggedUtterance> corpus, const TrainConfig& config = {});

// Negative log-likelihood of one utterance and its gradient contribution.
// Exposed for tests.
double UtteranceNegLogLikelihood(const CrfModel& model, const TaggedUtterance& utterance,
                                 std::span<double> gradient);

nlohmann::json ModelToJson(const CrfModel& model);
CrfModel ModelFromJson(const nlohmann::json& doc);
void SaveModel(const CrfModel& model, const std::filesystem::path& path);
CrfModel LoadModel(const std::filesystem::path& path);

}  // namespace vizref

#endif  // VIZREF_CRF_H_
