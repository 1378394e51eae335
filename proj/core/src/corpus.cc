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

#include "vizref/corpus.h"

#include <fstream>
#include <set>
#include <sstream>

#include "vizref/errors.h"

namespace vizref {

std::string_view SegmentName(Segment segment) {
  switch (segment) {
    case Segment::kSetup: return "setup";
    case Segment::kRequest: return "request";
    case Segment::kConclusion: return "conclusion";
  }
  return "request";
}

Segment ParseSegment(std::string_view name) {
  if (name == "setup") return Segment::kSetup;
  if (name == "request") return Segment::kRequest;
  if (name == "conclusion") return Segment::kConclusion;
  throw SchemaError("unknown segment '" + std::string(name) + "'");
}

std::optional<std::string> CorpusRecord::ReferentialGesture() const {
  for (const auto& g : gestures) {
    if (g.referential) return g.target;
  }
  return std::nullopt;
}

std::optional<std::string> CorpusRecord::AnyGesture() const {
  if (gestures.empty()) return std::nullopt;
  return gestures.front().target;
}

bool CorpusRecord::HasTextReference() const {
  for (Tag t : tags) {
    if (t == Tag::kBegin) return true;
  }
  return false;
}

namespace {

Json OptString(const std::optional<std::string>& s) { return s ? Json(*s) : Json(nullptr); }

const Json& Require(const Json& json, const char* key) {
  if (!json.is_object() || !json.contains(key)) {
    throw SchemaError(std::string("corpus record is missing '") + key + "'");
  }
  return json.at(key);
}

std::optional<std::string> OptField(const Json& json, const char* key) {
  const Json& v = Require(json, key);
  if (v.is_null()) return std::nullopt;
  if (!v.is_string()) throw SchemaError(std::string("corpus field '") + key + "' must be a string");
  return v.get<std::string>();
}

}  // namespace

Json RecordToJson(const CorpusRecord& r) {
  Json j;
  j["schema"] = kCorpusSchema;
  j["session"] = r.session;
  j["turn"] = r.turn;
  j["car"] = r.car;
  j["segment"] = SegmentName(r.segment);
  Json tokens = Json::array();
  Json pos = Json::array();
  for (const Token& t : r.tokens) {
    tokens.push_back(t.surface);
    pos.push_back(PosName(t.pos));
  }
  j["tokens"] = std::move(tokens);
  j["pos"] = std::move(pos);
  Json tags = Json::array();
  for (Tag t : r.tags) tags.push_back(TagName(t));
  j["tags"] = std::move(tags);
  j["truncated"] = r.truncated;
  Json gestures = Json::array();
  for (const auto& g : r.gestures) {
    Json gj;
    gj["target"] = g.target;
    gj["referential"] = g.referential;
    gestures.push_back(std::move(gj));
  }
  j["gestures"] = std::move(gestures);
  Json fillers = Json::array();
  for (const auto& f : r.fillers) {
    Json fj;
    fj["begin"] = f.span.begin;
    fj["end"] = f.span.end;
    fj["slot"] = f.slot;
    fj["text"] = f.text;
    fillers.push_back(std::move(fj));
  }
  j["fillers"] = std::move(fillers);
  j["intent"] = OptString(r.intent);
  j["referent"] = OptString(r.referent);
  j["window_op"] = WindowOperationName(r.window_op);
  if (r.new_spec) {
    Json s;
    s["id"] = r.new_spec->id;
    s["plot_type"] = PlotTypeName(r.new_spec->plot_type);
    Json entities = Json::array();
    for (const Entity& e : r.new_spec->entities) {
      Json ej;
      ej["slot"] = e.slot;
      ej["value"] = OptString(e.value);
      ej["text"] = e.text;
      ej["terms"] = e.terms;
      entities.push_back(std::move(ej));
    }
    s["entities"] = std::move(entities);
    j["new_spec"] = std::move(s);
  } else {
    j["new_spec"] = nullptr;
  }
  return j;
}

CorpusRecord RecordFromJson(const Json& j) {
  if (!j.is_object()) throw SchemaError("corpus record must be an object");
  if (Require(j, "schema") != std::string(kCorpusSchema)) {
    throw SchemaError("unsupported corpus schema");
  }
  try {
    CorpusRecord r;
    r.session = Require(j, "session").get<std::string>();
    r.turn = Require(j, "turn").get<std::size_t>();
    r.car = Require(j, "car").get<std::size_t>();
    r.segment = ParseSegment(Require(j, "segment").get<std::string>());
    const auto words = Require(j, "tokens").get<std::vector<std::string>>();
    const auto pos = Require(j, "pos").get<std::vector<std::string>>();
    const auto tags = Require(j, "tags").get<std::vector<std::string>>();
    for (std::size_t i = 0; i < words.size(); ++i) {
      Token t;
      t.surface = words[i];
      if (i < pos.size()) {
        auto p = ParsePos(pos[i]);
        if (!p) throw SchemaError("unknown POS tag '" + pos[i] + "'");
        t.pos = *p;
      }
      r.tokens.push_back(std::move(t));
    }
    if (pos.size() != words.size()) {
      throw IntegrityError("session " + r.session + " turn " + std::to_string(r.turn) +
                           ": pos has " + std::to_string(pos.size()) + " entries for " +
                           std::to_string(words.size()) + " tokens");
    }
    for (const auto& t : tags) {
      auto tag = ParseTag(t);
      if (!tag) throw SchemaError("unknown tag '" + t + "'");
      r.tags.push_back(*tag);
    }
    r.truncated = Require(j, "truncated").get<bool>();
    for (const Json& g : Require(j, "gestures")) {
      r.gestures.push_back({Require(g, "target").get<std::string>(),
                            Require(g, "referential").get<bool>()});
    }
    for (const Json& f : Require(j, "fillers")) {
      r.fillers.push_back({{Require(f, "begin").get<std::size_t>(),
                            Require(f, "end").get<std::size_t>()},
                           Require(f, "slot").get<std::string>(),
                           Require(f, "text").get<std::string>()});
    }
    r.intent = OptField(j, "intent");
    r.referent = OptField(j, "referent");
    r.window_op = ParseWindowOperation(Require(j, "window_op").get<std::string>());
    const Json& spec = Require(j, "new_spec");
    if (!spec.is_null()) {
      GoldSpec s;
      s.id = Require(spec, "id").get<std::string>();
      s.plot_type = ParsePlotType(Require(spec, "plot_type").get<std::string>());
      for (const Json& e : Require(spec, "entities")) {
        Entity ent;
        ent.slot = Require(e, "slot").get<std::string>();
        ent.value = OptField(e, "value");
        ent.text = Require(e, "text").get<std::string>();
        ent.terms = Require(e, "terms").get<std::vector<std::string>>();
        s.entities.push_back(std::move(ent));
      }
      r.new_spec = std::move(s);
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("malformed corpus record: ") + e.what());
  }
}

void ValidateCorpus(std::span<const CorpusRecord> records) {
  std::set<std::string> finished_sessions;
  std::string current;
  std::set<std::string> created;
  std::set<std::string> on_screen;
  std::optional<std::size_t> last_turn;
  for (const CorpusRecord& r : records) {
    auto where = [&] { return "session " + r.session + " turn " + std::to_string(r.turn); };
    if (r.session != current) {
      if (!current.empty()) finished_sessions.insert(current);
      if (finished_sessions.count(r.session)) {
        throw IntegrityError(where() + ": session records are not contiguous");
      }
      current = r.session;
      created.clear();
      on_screen.clear();
      last_turn.reset();
    }
    if (last_turn && r.turn <= *last_turn) throw IntegrityError(where() + ": turn out of order");
    last_turn = r.turn;
    if (r.tags.size() != r.tokens.size()) {
      throw IntegrityError(where() + ": " + std::to_string(r.tags.size()) + " tags for " +
                           std::to_string(r.tokens.size()) + " tokens");
    }
    if (!IsValidIob2(r.tags)) throw IntegrityError(where() + ": tags are not valid IOB2");
    for (const GoldFiller& f : r.fillers) {
      if (f.span.begin >= f.span.end || f.span.end > r.tokens.size()) {
        throw IntegrityError(where() + ": filler span outside utterance");
      }
    }
    for (const GoldGesture& g : r.gestures) {
      if (!on_screen.count(g.target)) {
        throw IntegrityError(where() + ": gesture at " + g.target + " which is not on screen");
      }
    }
    if (r.referent) {
      if (!created.count(*r.referent)) {
        throw IntegrityError(where() + ": referent " + *r.referent + " was never created");
      }
      if (!on_screen.count(*r.referent)) {
        throw IntegrityError(where() + ": referent " + *r.referent + " is no longer on screen");
      }
    }
    if (r.window_op == WindowOperation::kClose && r.referent) on_screen.erase(*r.referent);
    if (r.new_spec) {
      if (!created.insert(r.new_spec->id).second) {
        throw IntegrityError(where() + ": visualization id " + r.new_spec->id + " reused");
      }
      on_screen.insert(r.new_spec->id);
    }
  }
}

std::vector<CorpusRecord> ParseCorpus(std::string_view jsonl) {
  std::vector<CorpusRecord> records;
  std::istringstream in{std::string(jsonl)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw FormatError(std::string("corpus line is not valid JSON: ") + e.what(), line_no);
    }
    records.push_back(RecordFromJson(j));
  }
  ValidateCorpus(records);
  return records;
}

std::vector<CorpusRecord> LoadCorpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw NotFoundError("cannot open corpus " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseCorpus(buffer.str());
}

std::string FormatCorpus(std::span<const CorpusRecord> records) {
  std::string out;
  for (const CorpusRecord& r : records) {
    out += RecordToJson(r).dump();
    out += '\n';
  }
  return out;
}

void SaveCorpus(std::span<const CorpusRecord> records, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw NotFoundError("cannot write corpus " + path.string());
  out << FormatCorpus(records);
}

std::vector<std::pair<std::size_t, std::size_t>> SessionRanges(
    std::span<const CorpusRecord> records) {
  std::vector<std::pair<std::size_t, std::size_t>> ranges;
  std::size_t begin = 0;
  for (std::size_t i = 1; i <= records.size(); ++i) {
    if (i == records.size() || records[i].session != records[begin].session) {
      if (i > begin) ranges.emplace_back(begin, i);
      begin = i;
    }
  }
  return ranges;
}

std::vector<TaggedUtterance> ToTaggedUtterances(std::span<const CorpusRecord> records) {
  std::vector<TaggedUtterance> out;
  out.reserve(records.size());
  for (const CorpusRecord& r : records) out.push_back({r.tokens, r.tags});
  return out;
}

}  // namespace vizref
