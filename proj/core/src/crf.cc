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

#include "vizref/crf.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "vizref/errors.h"
#include "vizref/optimizer.h"

namespace vizref {

using nlohmann::json;

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr std::string_view kModelFormat = "vizref.crf";

std::size_t Idx(Tag t) { return static_cast<std::size_t>(t); }

double LogSumExp(const double* values, std::size_t n) {
  double m = kNegInf;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, values[i]);
  if (m == kNegInf) return kNegInf;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += std::exp(values[i] - m);
  return m + std::log(sum);
}

// Transition score with hard IOB2 constraints folded in.
double TransitionScore(const CrfModel& model, Tag from, Tag to) {
  return TransitionAllowed(from, to) ? model.transition(from, to) : kNegInf;
}

double StartScore(const CrfModel& model, Tag tag) {
  return TransitionAllowed(std::nullopt, tag) ? model.start(tag) : kNegInf;
}

// Feature indices of every position, resolved against a model dictionary.
using CompiledFeatures = std::vector<std::vector<std::size_t>>;

CompiledFeatures Compile(const CrfModel& model, std::span<const Token> tokens) {
  CompiledFeatures out(tokens.size());
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    for (const std::string& f : ExtractFeatures(tokens, t)) {
      if (auto index = model.FeatureIndex(f)) out[t].push_back(*index);
    }
  }
  return out;
}

// Forward-backward over one utterance. Adds the gradient of the negative
// log-likelihood to `gradient` (flat parameter layout) and returns the NLL.
double NegLogLikelihood(const CrfModel& model, const CompiledFeatures& features,
                        std::span<const Tag> gold, std::span<double> gradient) {
  const std::size_t n = features.size();
  const std::size_t emission_size = model.num_features() * kNumTags;
  const std::size_t trans_offset = emission_size;
  const std::size_t start_offset = emission_size + kNumTags * kNumTags;

  std::vector<std::array<double, kNumTags>> emit(n);
  for (std::size_t t = 0; t < n; ++t) {
    for (Tag y : kAllTags) {
      double s = 0.0;
      for (std::size_t f : features[t]) s += model.emission(f, y);
      emit[t][Idx(y)] = s;
    }
  }

  std::vector<std::array<double, kNumTags>> alpha(n), beta(n);
  for (Tag y : kAllTags) alpha[0][Idx(y)] = StartScore(model, y) + emit[0][Idx(y)];
  for (std::size_t t = 1; t < n; ++t) {
    for (Tag y : kAllTags) {
      std::array<double, kNumTags> terms;
      for (Tag p : kAllTags) terms[Idx(p)] = alpha[t - 1][Idx(p)] + TransitionScore(model, p, y);
      alpha[t][Idx(y)] = LogSumExp(terms.data(), kNumTags) + emit[t][Idx(y)];
    }
  }
  for (Tag y : kAllTags) beta[n - 1][Idx(y)] = 0.0;
  for (std::size_t t = n - 1; t-- > 0;) {
    for (Tag y : kAllTags) {
      std::array<double, kNumTags> terms;
      for (Tag nx : kAllTags) {
        terms[Idx(nx)] = TransitionScore(model, y, nx) + emit[t + 1][Idx(nx)] + beta[t + 1][Idx(nx)];
      }
      beta[t][Idx(y)] = LogSumExp(terms.data(), kNumTags);
    }
  }
  const double log_z = LogSumExp(alpha[n - 1].data(), kNumTags);

  double gold_score = model.start(gold[0]) + emit[0][Idx(gold[0])];
  for (std::size_t t = 1; t < n; ++t) {
    gold_score += model.transition(gold[t - 1], gold[t]) + emit[t][Idx(gold[t])];
  }

  if (!gradient.empty()) {
    for (std::size_t t = 0; t < n; ++t) {
      for (Tag y : kAllTags) {
        const double marginal = std::exp(alpha[t][Idx(y)] + beta[t][Idx(y)] - log_z);
        const double delta = marginal - (gold[t] == y ? 1.0 : 0.0);
        if (delta == 0.0) continue;
        for (std::size_t f : features[t]) gradient[f * kNumTags + Idx(y)] += delta;
        if (t == 0) gradient[start_offset + Idx(y)] += delta;
      }
    }
    for (std::size_t t = 1; t < n; ++t) {
      for (Tag p : kAllTags) {
        for (Tag y : kAllTags) {
          const double trans = TransitionScore(model, p, y);
          if (trans == kNegInf) continue;
          const double pair = std::exp(alpha[t - 1][Idx(p)] + trans + emit[t][Idx(y)] +
                                       beta[t][Idx(y)] - log_z);
          gradient[trans_offset + Idx(p) * kNumTags + Idx(y)] += pair;
        }
      }
      gradient[trans_offset + Idx(gold[t - 1]) * kNumTags + Idx(gold[t])] -= 1.0;
    }
  }
  return log_z - gold_score;
}

void ValidateTagged(const TaggedUtterance& u, std::size_t index) {
  if (u.tokens.empty()) {
    throw ArgumentError("training utterance " + std::to_string(index) + " is empty");
  }
  if (u.tokens.size() != u.tags.size()) {
    throw ArgumentError("training utterance " + std::to_string(index) +
                        " has mismatched token and tag counts");
  }
  if (!IsValidIob2(u.tags)) {
    throw ArgumentError("training utterance " + std::to_string(index) + " is not valid IOB2");
  }
}

}  // namespace

std::string_view TagName(Tag tag) {
  switch (tag) {
    case Tag::kBegin:
      return "B-REF";
    case Tag::kInside:
      return "I-REF";
    case Tag::kOutside:
      return "O";
  }
  return "O";
}

std::optional<Tag> ParseTag(std::string_view name) {
  if (name == "B-REF" || name == "B") return Tag::kBegin;
  if (name == "I-REF" || name == "I") return Tag::kInside;
  if (name == "O" || name == "O-REF") return Tag::kOutside;
  return std::nullopt;
}

bool TransitionAllowed(std::optional<Tag> previous, Tag next) {
  if (next != Tag::kInside) return true;
  return previous.has_value() && *previous != Tag::kOutside;
}

bool IsValidIob2(std::span<const Tag> tags) {
  std::optional<Tag> previous;
  for (Tag t : tags) {
    if (!TransitionAllowed(previous, t)) return false;
    previous = t;
  }
  return true;
}

std::string WordShape(std::string_view word) {
  std::string shape;
  for (char c : word) {
    const auto uc = static_cast<unsigned char>(c);
    char cls = std::isupper(uc) ? 'X' : std::islower(uc) ? 'x' : std::isdigit(uc) ? 'd' : c;
    if (shape.empty() || shape.back() != cls) shape.push_back(cls);
  }
  return shape;
}

std::vector<std::string> ExtractFeatures(std::span<const Token> tokens, std::size_t index) {
  if (index >= tokens.size()) throw ArgumentError("feature index out of range");
  const Token& tok = tokens[index];
  const std::string lower = ToLower(tok.surface);
  std::vector<std::string> f;
  f.reserve(12);
  f.emplace_back("bias");
  f.push_back("w=" + lower);
  f.push_back("shape=" + WordShape(tok.surface));
  f.push_back("p3=" + lower.substr(0, 3));
  f.push_back("s3=" + (lower.size() > 3 ? lower.substr(lower.size() - 3) : lower));
  f.push_back("pos=" + std::string(PosName(tok.pos)));
  if (index == 0) {
    f.emplace_back("BOS");
  } else {
    f.push_back("w-1=" + ToLower(tokens[index - 1].surface));
    f.push_back("pos-1=" + std::string(PosName(tokens[index - 1].pos)));
  }
  if (index + 1 == tokens.size()) {
    f.emplace_back("EOS");
  } else {
    f.push_back("w+1=" + ToLower(tokens[index + 1].surface));
    f.push_back("pos+1=" + std::string(PosName(tokens[index + 1].pos)));
  }
  return f;
}

std::optional<std::size_t> CrfModel::FeatureIndex(std::string_view name) const {
  auto it = feature_index_.find(std::string(name));
  if (it == feature_index_.end()) return std::nullopt;
  return it->second;
}

std::size_t CrfModel::AddFeature(const std::string& name) {
  auto [it, inserted] = feature_index_.emplace(name, feature_names_.size());
  if (inserted) {
    feature_names_.push_back(name);
    emissions_.resize(emissions_.size() + kNumTags, 0.0);
  }
  return it->second;
}

std::vector<double> CrfModel::Parameters() const {
  std::vector<double> p;
  p.reserve(num_parameters());
  p.insert(p.end(), emissions_.begin(), emissions_.end());
  p.insert(p.end(), transitions_.begin(), transitions_.end());
  p.insert(p.end(), start_.begin(), start_.end());
  return p;
}

void CrfModel::SetParameters(std::span<const double> params) {
  if (params.size() != num_parameters()) throw ArgumentError("parameter vector size mismatch");
  auto it = params.begin();
  std::copy(it, it + static_cast<std::ptrdiff_t>(emissions_.size()), emissions_.begin());
  it += static_cast<std::ptrdiff_t>(emissions_.size());
  std::copy(it, it + static_cast<std::ptrdiff_t>(transitions_.size()), transitions_.begin());
  it += static_cast<std::ptrdiff_t>(transitions_.size());
  std::copy(it, it + static_cast<std::ptrdiff_t>(kNumTags), start_.begin());
}

std::vector<std::array<double, kNumTags>> CrfModel::EmissionScores(
    std::span<const Token> tokens) const {
  std::vector<std::array<double, kNumTags>> scores(tokens.size());
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    scores[t].fill(0.0);
    for (const std::string& f : ExtractFeatures(tokens, t)) {
      auto index = FeatureIndex(f);
      if (!index) continue;
      for (Tag y : kAllTags) scores[t][Idx(y)] += emission(*index, y);
    }
  }
  return scores;
}

std::vector<Tag> Decode(const CrfModel& model, std::span<const Token> tokens) {
  if (tokens.empty()) throw ArgumentError("cannot decode an empty utterance");
  const std::size_t n = tokens.size();
  const auto emit = model.EmissionScores(tokens);

  // best[t][y]: best score of positions t..n-1 given tag y at t. Decoding
  // then walks forward taking the smallest tag that stays optimal, which
  // yields the lexicographically smallest optimal sequence.
  std::vector<std::array<double, kNumTags>> best(n);
  for (Tag y : kAllTags) best[n - 1][Idx(y)] = emit[n - 1][Idx(y)];
  for (std::size_t t = n - 1; t-- > 0;) {
    for (Tag y : kAllTags) {
      double m = kNegInf;
      for (Tag nx : kAllTags) {
        m = std::max(m, TransitionScore(model, y, nx) + best[t + 1][Idx(nx)]);
      }
      best[t][Idx(y)] = emit[t][Idx(y)] + m;
    }
  }

  std::vector<Tag> out(n);
  double top = kNegInf;
  for (Tag y : kAllTags) {
    const double s = StartScore(model, y) + best[0][Idx(y)];
    if (s > top) {
      top = s;
      out[0] = y;
    }
  }
  for (std::size_t t = 1; t < n; ++t) {
    double m = kNegInf;
    for (Tag y : kAllTags) {
      const double s = TransitionScore(model, out[t - 1], y) + best[t][Idx(y)];
      if (s > m) {
        m = s;
        out[t] = y;
      }
    }
  }
  return out;
}

double UtteranceNegLogLikelihood(const CrfModel& model, const TaggedUtterance& utterance,
                                 std::span<double> gradient) {
  ValidateTagged(utterance, 0);
  return NegLogLikelihood(model, Compile(model, utterance.tokens), utterance.tags, gradient);
}

TrainResult TrainCrf(std::span<const TaggedUtterance> corpus, const TrainConfig& config) {
  if (corpus.empty()) throw ArgumentError("training corpus is empty");
  TrainResult result;
  std::vector<const TaggedUtterance*> used;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    ValidateTagged(corpus[i], i);
    const bool all_outside = std::all_of(corpus[i].tags.begin(), corpus[i].tags.end(),
                                         [](Tag t) { return t == Tag::kOutside; });
    if (all_outside) {
      ++result.skipped_all_outside;
    } else {
      used.push_back(&corpus[i]);
    }
  }
  if (used.empty()) {
    throw ArgumentError("empty training set: every utterance is tagged only O");
  }
  result.used_utterances = used.size();

  CrfModel model;
  model.c1 = config.c1;
  model.c2 = config.c2;
  for (const TaggedUtterance* u : used) {
    for (std::size_t t = 0; t < u->tokens.size(); ++t) {
      for (const std::string& f : ExtractFeatures(u->tokens, t)) model.AddFeature(f);
    }
  }
  std::vector<CompiledFeatures> compiled;
  compiled.reserve(used.size());
  for (const TaggedUtterance* u : used) compiled.push_back(Compile(model, u->tokens));

  const double c2 = config.c2;
  SmoothObjective objective = [&](std::span<const double> x, std::span<double> grad) {
    model.SetParameters(x);
    std::fill(grad.begin(), grad.end(), 0.0);
    double loss = 0.0;
    for (std::size_t i = 0; i < used.size(); ++i) {
      loss += NegLogLikelihood(model, compiled[i], used[i]->tags, grad);
    }
    for (std::size_t k = 0; k < x.size(); ++k) {
      loss += c2 * x[k] * x[k];
      grad[k] += 2.0 * c2 * x[k];
    }
    return loss;
  };

  OwlqnOptions options;
  options.l1 = config.c1;
  options.max_iterations = config.max_iterations;
  options.epsilon = config.epsilon;
  options.history = config.history;
  OwlqnResult opt = MinimizeOwlqn(objective, std::vector<double>(model.num_parameters(), 0.0),
                                  options);
  model.SetParameters(opt.x);
  result.model = std::move(model);
  result.loss_history = std::move(opt.objective_history);
  result.iterations = opt.iterations;
  result.converged = opt.converged;
  return result;
}

json ModelToJson(const CrfModel& model) {
  json doc;
  doc["format"] = kModelFormat;
  doc["template_version"] = model.template_version;
  json tags = json::array();
  for (Tag t : kAllTags) tags.push_back(TagName(t));
  doc["tags"] = tags;
  doc["c1"] = model.c1;
  doc["c2"] = model.c2;
  json start = json::array();
  for (Tag t : kAllTags) start.push_back(model.start(t));
  doc["start"] = start;
  json trans = json::array();
  for (Tag from : kAllTags) {
    json row = json::array();
    for (Tag to : kAllTags) row.push_back(model.transition(from, to));
    trans.push_back(row);
  }
  doc["transitions"] = trans;
  json names = json::array();
  json weights = json::array();
  for (std::size_t f = 0; f < model.num_features(); ++f) {
    names.push_back(model.feature_name(f));
    for (Tag t : kAllTags) weights.push_back(model.emission(f, t));
  }
  doc["features"] = {{"names", names}, {"weights", weights}};
  return doc;
}

CrfModel ModelFromJson(const json& doc) {
  try {
    if (doc.at("format").get<std::string>() != kModelFormat) {
      throw SchemaError("model file: unexpected format '" +
                        doc.at("format").get<std::string>() + "'");
    }
    CrfModel model;
    model.template_version = doc.at("template_version").get<int>();
    if (model.template_version != kFeatureTemplateVersion) {
      throw SchemaError("model file: feature template version " +
                        std::to_string(model.template_version) + " is not supported (expected " +
                        std::to_string(kFeatureTemplateVersion) + ")");
    }
    const auto& tags = doc.at("tags");
    if (tags.size() != kNumTags) throw SchemaError("model file: tags must list 3 tags");
    for (std::size_t i = 0; i < kNumTags; ++i) {
      if (tags[i].get<std::string>() != TagName(kAllTags[i])) {
        throw SchemaError("model file: tag order must be B-REF, I-REF, O");
      }
    }
    model.c1 = doc.at("c1").get<double>();
    model.c2 = doc.at("c2").get<double>();
    for (Tag t : kAllTags) model.set_start(t, doc.at("start").at(Idx(t)).get<double>());
    for (Tag from : kAllTags) {
      for (Tag to : kAllTags) {
        model.set_transition(from, to,
                             doc.at("transitions").at(Idx(from)).at(Idx(to)).get<double>());
      }
    }
    const auto& names = doc.at("features").at("names");
    const auto& weights = doc.at("features").at("weights");
    if (weights.size() != names.size() * kNumTags) {
      throw SchemaError("model file: features.weights must hold 3 weights per feature");
    }
    for (std::size_t f = 0; f < names.size(); ++f) {
      const std::size_t index = model.AddFeature(names[f].get<std::string>());
      for (Tag t : kAllTags) {
        model.set_emission(index, t, weights[f * kNumTags + Idx(t)].get<double>());
      }
    }
    return model;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("model file: ") + e.what());
  }
}

void SaveModel(const CrfModel& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ArgumentError("cannot write model file " + path.string());
  out << ModelToJson(model).dump() << '\n';
}

CrfModel LoadModel(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open model file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("model file is not valid JSON: ") + e.what());
  }
  return ModelFromJson(doc);
}

}  // namespace vizref
