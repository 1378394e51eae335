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

#ifndef VIZREF_CORPUS_H_
#define VIZREF_CORPUS_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vizref/crf.h"
#include "vizref/entity.h"
#include "vizref/frames.h"
#include "vizref/spec_io.h"
#include "vizref/text.h"

namespace vizref {

inline constexpr std::string_view kCorpusSchema = "vizref.corpus/1";

enum class Segment { kSetup, kRequest, kConclusion };
std::string_view SegmentName(Segment segment);
Segment ParseSegment(std::string_view name);

struct GoldGesture {
  std::string target;
  bool referential = false;

  friend bool operator==(const GoldGesture&, const GoldGesture&) = default;
};

struct GoldFiller {
  TokenSpan span;
  std::string slot;
  std::string text;

  friend bool operator==(const GoldFiller&, const GoldFiller&) = default;
};

struct GoldSpec {
  std::string id;
  PlotType plot_type = PlotType::kBar;
  std::vector<Entity> entities;

  friend bool operator==(const GoldSpec&, const GoldSpec&) = default;
};

// One utterance. A contextual actionable request (CAR) is a run of setup
// turns, one request turn and a run of conclusion turns sharing `car`.
struct CorpusRecord {
  std::string session;
  std::size_t turn = 0;
  std::size_t car = 0;
  Segment segment = Segment::kRequest;
  std::vector<Token> tokens;
  std::vector<Tag> tags;
  bool truncated = false;
  std::vector<GoldGesture> gestures;
  std::vector<GoldFiller> fillers;
  std::optional<std::string> intent;
  std::optional<std::string> referent;
  WindowOperation window_op = WindowOperation::kNone;
  std::optional<GoldSpec> new_spec;

  // The first referential gesture's target.
  std::optional<std::string> ReferentialGesture() const;
  // The first gesture's target, referential or not.
  std::optional<std::string> AnyGesture() const;
  bool HasTextReference() const;

  friend bool operator==(const CorpusRecord&, const CorpusRecord&) = default;
};

Json RecordToJson(const CorpusRecord& record);
// Throws SchemaError naming the missing or malformed field.
CorpusRecord RecordFromJson(const Json& json);

// Structural and per-session referential checks: parallel arrays, IOB2 tags,
// contiguous sessions, increasing turns, unique spec ids, and referents and
// gesture targets that were created earlier and are still on screen.
// Throws IntegrityError naming the session and turn.
void ValidateCorpus(std::span<const CorpusRecord> records);

std::vector<CorpusRecord> ParseCorpus(std::string_view jsonl);
std::vector<CorpusRecord> LoadCorpus(const std::filesystem::path& path);
std::string FormatCorpus(std::span<const CorpusRecord> records);
void SaveCorpus(std::span<const CorpusRecord> records, const std::filesystem::path& path);

// Contiguous [begin, end) index ranges, one per session, file order.
std::vector<std::pair<std::size_t, std::size_t>> SessionRanges(
    std::span<const CorpusRecord> records);

std::vector<TaggedUtterance> ToTaggedUtterances(std::span<const CorpusRecord> records);

}  // namespace vizref

#endif  // VIZREF_CORPUS_H_
