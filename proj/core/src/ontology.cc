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

#include "vizref/ontology.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "vizref/errors.h"
#include "vizref/text.h"

namespace vizref {

using nlohmann::json;

std::string_view SlotKindName(SlotKind kind) {
  switch (kind) {
    case SlotKind::kTemporal:
      return "temporal";
    case SlotKind::kCategorical:
      return "categorical";
    case SlotKind::kSpatial:
      return "spatial";
  }
  return "categorical";
}

SlotKind ParseSlotKind(std::string_view name) {
  if (name == "temporal") return SlotKind::kTemporal;
  if (name == "categorical") return SlotKind::kCategorical;
  if (name == "spatial") return SlotKind::kSpatial;
  throw SchemaError("unknown slot kind '" + std::string(name) + "'");
}

KnowledgeOntology::KnowledgeOntology(std::vector<ParentSlot> slots)
    : slots_(std::move(slots)) {
  if (slots_.size() != kNumParentSlots) {
    throw CardinalityError("ontology must define exactly " +
                           std::to_string(kNumParentSlots) +
                           " parent slots, found " +
                           std::to_string(slots_.size()));
  }
  bool has_temporal = false;
  bool has_spatial = false;
  for (std::size_t i = 0; i < slots_.size(); ++i) {
    const ParentSlot& slot = slots_[i];
    if (slot.name.empty()) throw SchemaError("slots[" + std::to_string(i) + "].name is empty");
    if (!slot_index_.emplace(slot.name, i).second) {
      throw SchemaError("slots[" + std::to_string(i) + "].name: duplicate slot '" +
                        slot.name + "'");
    }
    if (slot.terms.empty()) {
      throw SchemaError("slots[" + std::to_string(i) + "].terms is empty");
    }
    has_temporal |= slot.kind == SlotKind::kTemporal;
    has_spatial |= slot.kind == SlotKind::kSpatial;
    for (const std::string& term : slot.terms) {
      if (term.empty()) {
        throw SchemaError("slots[" + std::to_string(i) + "].terms contains an empty term");
      }
      auto [it, inserted] = term_index_.emplace(term, TermEntry{i, false});
      if (!inserted) {
        throw SchemaError("slots[" + std::to_string(i) + "].terms: term '" + term +
                          "' already belongs to slot " + slots_[it->second.slot].name);
      }
    }
    for (const std::string& term : slot.generic_terms) {
      auto it = term_index_.find(term);
      if (it == term_index_.end() || it->second.slot != i) {
        throw SchemaError("slots[" + std::to_string(i) + "].generic: '" + term +
                          "' is not one of the slot's terms");
      }
      it->second.generic = true;
    }
  }
  if (!has_temporal) throw SchemaError("slots: no slot of kind temporal");
  if (!has_spatial) throw SchemaError("slots: no slot of kind spatial");
}

std::optional<std::size_t> KnowledgeOntology::IndexOf(std::string_view slot_name) const {
  auto it = slot_index_.find(std::string(slot_name));
  if (it == slot_index_.end()) return std::nullopt;
  return it->second;
}

std::size_t KnowledgeOntology::RequireIndex(std::string_view slot_name) const {
  auto index = IndexOf(slot_name);
  if (!index) throw ArgumentError("unknown slot '" + std::string(slot_name) + "'");
  return *index;
}

SlotKind KnowledgeOntology::KindOf(std::string_view slot_name) const {
  return slots_[RequireIndex(slot_name)].kind;
}

std::optional<TermEntry> KnowledgeOntology::FindTerm(std::string_view term) const {
  auto it = term_index_.find(ToLower(term));
  if (it == term_index_.end()) return std::nullopt;
  return it->second;
}

namespace {

std::vector<std::string> ReadStringArray(const json& node, const std::string& field) {
  if (!node.is_array()) throw SchemaError(field + " must be an array of strings");
  std::vector<std::string> out;
  out.reserve(node.size());
  for (std::size_t i = 0; i < node.size(); ++i) {
    if (!node[i].is_string()) {
      throw SchemaError(field + "[" + std::to_string(i) + "] must be a string");
    }
    out.push_back(ToLower(node[i].get<std::string>()));
  }
  return out;
}

}  // namespace

KnowledgeOntology ParseOntology(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("ontology is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("slots")) {
    throw SchemaError("missing top-level field 'slots'");
  }
  const json& slots = doc["slots"];
  if (!slots.is_array()) throw SchemaError("slots must be an array");
  std::vector<ParentSlot> parsed;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    const std::string prefix = "slots[" + std::to_string(i) + "]";
    const json& entry = slots[i];
    if (!entry.is_object()) throw SchemaError(prefix + " must be an object");
    for (const char* field : {"name", "kind", "terms"}) {
      if (!entry.contains(field)) throw SchemaError(prefix + "." + field + " is missing");
    }
    if (!entry["name"].is_string()) throw SchemaError(prefix + ".name must be a string");
    if (!entry["kind"].is_string()) throw SchemaError(prefix + ".kind must be a string");
    ParentSlot slot;
    slot.name = entry["name"].get<std::string>();
    try {
      slot.kind = ParseSlotKind(entry["kind"].get<std::string>());
    } catch (const SchemaError& e) {
      throw SchemaError(prefix + ".kind: " + e.what());
    }
    slot.terms = ReadStringArray(entry["terms"], prefix + ".terms");
    if (entry.contains("generic")) {
      slot.generic_terms = ReadStringArray(entry["generic"], prefix + ".generic");
    }
    parsed.push_back(std::move(slot));
  }
  return KnowledgeOntology(std::move(parsed));
}

KnowledgeOntology LoadOntology(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open ontology file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseOntology(buffer.str());
}

EmbeddingLexicon::EmbeddingLexicon(std::size_t dimension,
                                   std::unordered_map<std::string, Vector> entries)
    : dimension_(dimension), entries_(std::move(entries)) {
  if (dimension_ == 0) throw FormatError("embedding dimension must be positive", 0);
  if (entries_.empty()) throw FormatError("embedding vocabulary is empty", 0);
  for (const auto& [word, v] : entries_) {
    if (v.size() != dimension_) {
      throw FormatError("vector for '" + word + "' has length " +
                            std::to_string(v.size()) + ", expected " +
                            std::to_string(dimension_),
                        0);
    }
  }
}

const Vector* EmbeddingLexicon::Find(std::string_view word) const {
  auto it = entries_.find(ToLower(word));
  return it == entries_.end() ? nullptr : &it->second;
}

EmbeddingLexicon ParseEmbeddings(std::string_view text) {
  std::unordered_map<std::string, Vector> entries;
  std::size_t dimension = 0;
  int line_number = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;

    std::istringstream fields{std::string(line)};
    std::string word;
    fields >> word;
    Vector values;
    std::string field;
    while (fields >> field) {
      double value = 0.0;
      auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
      if (ec != std::errc() || end != field.data() + field.size() || !std::isfinite(value)) {
        throw FormatError("non-numeric component '" + field + "'", line_number);
      }
      values.push_back(value);
    }
    if (values.empty()) throw FormatError("word '" + word + "' has no vector", line_number);
    if (dimension == 0) dimension = values.size();
    if (values.size() != dimension) {
      throw FormatError("expected " + std::to_string(dimension) + " values, found " +
                            std::to_string(values.size()),
                        line_number);
    }
    entries.insert_or_assign(ToLower(word), std::move(values));
  }
  if (entries.empty()) throw FormatError("embedding vocabulary is empty", 0);
  return EmbeddingLexicon(dimension, std::move(entries));
}

EmbeddingLexicon LoadEmbeddings(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open embedding file " + path.string(), 0);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseEmbeddings(buffer.str());
}

double Dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

double Norm(std::span<const double> v) { return std::sqrt(Dot(v, v)); }

double Cosine(std::span<const double> a, std::span<const double> b) {
  const double na = Norm(a);
  const double nb = Norm(b);
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::clamp(Dot(a, b) / (na * nb), -1.0, 1.0);
}

std::vector<std::string> SplitWords(std::string_view phrase) {
  std::vector<std::string> words;
  std::istringstream in{std::string(phrase)};
  std::string word;
  while (in >> word) words.push_back(word);
  return words;
}

Vector EmbedPhrase(std::span<const std::string> tokens, const EmbeddingLexicon& lexicon) {
  Vector mean(lexicon.dimension(), 0.0);
  std::size_t found = 0;
  for (const std::string& token : tokens) {
    const Vector* v = lexicon.Find(token);
    if (v == nullptr) continue;
    for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += (*v)[i];
    ++found;
  }
  if (found == 0) return mean;
  for (double& x : mean) x /= static_cast<double>(found);
  const double norm = Norm(mean);
  if (norm == 0.0) return mean;
  for (double& x : mean) x /= norm;
  return mean;
}

SlotPrototypes::SlotPrototypes(const KnowledgeOntology& ontology,
                               const EmbeddingLexicon& lexicon,
                               std::span<const std::string> excluded_terms) {
  prototypes_.reserve(ontology.size());
  for (const ParentSlot& slot : ontology.slots()) {
    Vector sum(lexicon.dimension(), 0.0);
    std::size_t used = 0;
    for (const std::string& term : slot.terms) {
      if (std::find(excluded_terms.begin(), excluded_terms.end(), term) !=
          excluded_terms.end()) {
        continue;
      }
      const std::vector<std::string> words = SplitWords(term);
      Vector v = EmbedPhrase(words, lexicon);
      if (Norm(v) == 0.0) continue;
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += v[i];
      ++used;
    }
    if (used > 0) {
      for (double& x : sum) x /= static_cast<double>(used);
      const double norm = Norm(sum);
      if (norm > 0.0) {
        for (double& x : sum) x /= norm;
      }
    }
    prototypes_.push_back({slot.name, std::move(sum)});
  }
}

std::vector<double> SlotPrototypes::Similarities(std::span<const double> phrase_vector) const {
  std::vector<double> out;
  out.reserve(prototypes_.size());
  for (const SlotPrototype& p : prototypes_) out.push_back(Cosine(phrase_vector, p.vector));
  return out;
}

std::optional<SlotMatch> NearestSlotForVector(std::span<const double> vector,
                                              const SlotPrototypes& prototypes,
                                              double threshold) {
  if (Norm(vector) == 0.0) return std::nullopt;
  std::optional<SlotMatch> best;
  for (std::size_t i = 0; i < prototypes.size(); ++i) {
    const double score = Cosine(vector, prototypes.at(i).vector);
    if (!best || score > best->score) best = SlotMatch{prototypes.at(i).slot, i, score};
  }
  if (!best || best->score < threshold) return std::nullopt;
  return best;
}

std::optional<SlotMatch> NearestSlot(std::span<const std::string> phrase,
                                     const SlotPrototypes& prototypes,
                                     const EmbeddingLexicon& lexicon, double threshold) {
  const Vector v = EmbedPhrase(phrase, lexicon);
  return NearestSlotForVector(v, prototypes, threshold);
}

}  // namespace vizref
