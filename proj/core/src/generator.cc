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

#include "vizref/generator.h"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "vizref/errors.h"
#include "vizref/establishment.h"
#include "vizref/history.h"

namespace vizref {

namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool Bernoulli(double p) { return Uniform() < p; }
  std::size_t Index(std::size_t n) {
    return std::min(n - 1, static_cast<std::size_t>(Uniform() * static_cast<double>(n)));
  }
  // Inclusive range.
  std::size_t Between(std::size_t lo, std::size_t hi) { return lo + Index(hi - lo + 1); }
  template <typename T>
  const T& Pick(const std::vector<T>& items) {
    return items[Index(items.size())];
  }

 private:
  std::mt19937_64 engine_;
};

struct SlotPhrase {
  std::string prep;
  std::string text;
  Entity entity;
};

struct OnScreen {
  std::string id;
  std::vector<Entity> entities;
};

class Builder {
 public:
  void Plain(std::string_view text) {
    for (auto& w : Tokenize(text)) {
      words_.push_back(w);
      tags_.push_back(Tag::kOutside);
    }
  }
  void Ref(std::string_view text) {
    bool first = true;
    for (auto& w : Tokenize(text)) {
      words_.push_back(w);
      tags_.push_back(first ? Tag::kBegin : Tag::kInside);
      first = false;
    }
  }
  void Slot(const SlotPhrase& p) {
    Plain(p.prep);
    const std::size_t begin = words_.size();
    Plain(p.text);
    fillers_.push_back({{begin, words_.size()}, p.entity.slot, p.text});
    entities_.push_back(p.entity);
  }
  const std::vector<Entity>& entities() const { return entities_; }

  void Fill(CorpusRecord& r) const {
    const std::vector<Token> tokens = TagTokens(words_);
    const std::size_t keep = std::min(tokens.size(), kMaxUtteranceTokens);
    r.tokens.assign(tokens.begin(), tokens.begin() + static_cast<std::ptrdiff_t>(keep));
    r.tags.assign(tags_.begin(), tags_.begin() + static_cast<std::ptrdiff_t>(keep));
    r.truncated = tokens.size() > keep;
    for (const GoldFiller& f : fillers_) {
      if (f.span.end <= keep) r.fillers.push_back(f);
    }
  }

 private:
  std::vector<std::string> words_;
  std::vector<Tag> tags_;
  std::vector<GoldFiller> fillers_;
  std::vector<Entity> entities_;
};

using Handlers = std::map<std::string, std::function<void(Builder&)>, std::less<>>;

void Expand(Builder& b, std::string_view tmpl, const Handlers& handlers) {
  std::size_t pos = 0;
  while (pos < tmpl.size()) {
    const std::size_t open = tmpl.find('{', pos);
    if (open == std::string_view::npos) {
      b.Plain(tmpl.substr(pos));
      break;
    }
    b.Plain(tmpl.substr(pos, open - pos));
    const std::size_t close = tmpl.find('}', open);
    const std::string_view name = tmpl.substr(open + 1, close - open - 1);
    auto it = handlers.find(name);
    if (it == handlers.end()) throw ArgumentError("template placeholder without handler");
    it->second(b);
    pos = close + 1;
  }
}

const std::vector<std::string> kCreateLeads = {
    "can i see", "show me", "can you show", "can you show me", "i would like to see",
    "let's look at", "could you display", "can we get", "give me", "i want to see",
    "please show", "can you pull up", "let's see", "i need", "can you plot", "could i see",
    "can you make a chart of", "show"};

const std::vector<std::string> kTemporalEdits = {
    "can you show {REF} {T}", "what about {REF} {T}", "now show {REF} {T}",
    "i want to see {REF} {T}", "can i see {REF} {T} instead", "break {REF} down {T}",
    "could you display {REF} {T}", "can we get {REF} {T}"};
const std::vector<std::string> kMonthsOfYearEdits = {
    "ok let's have a look at can you have {REF} for months of the year",
    "show {REF} for months of the year", "can you show {REF} for months of the year"};
const std::vector<std::string> kCrimeEdits = {
    "can you show {REF} for {C}", "can i see {REF} for {C} instead", "show {REF} but for {C}",
    "now show {REF} with {C} too"};
const std::vector<std::string> kSpatialEdits = {
    "can you show {REF} {S}", "what about {REF} {S}", "now show {REF} {S}",
    "i want to see {REF} {S} instead"};
const std::vector<std::string> kExtraEdits = {"can you show {REF} {X}", "now show {REF} {X} only"};
const std::vector<std::string> kCueEdits = {
    "can i see {REF} on a map", "show {REF} as a heat map", "can you put {REF} on a map"};

const std::map<WindowOperation, std::vector<std::string>>& WindowTemplates() {
  static const auto* t = new std::map<WindowOperation, std::vector<std::string>>{
      {WindowOperation::kClose,
       {"close {REF}", "can you close {REF}", "please close {REF}", "close {REF} please",
        "remove {REF}"}},
      {WindowOperation::kMove, {"move {REF} to the left", "move {REF} over to the right"}},
      {WindowOperation::kMaximize, {"maximize {REF}", "can you maximize {REF}"}},
      {WindowOperation::kMinimize, {"minimize {REF}", "please minimize {REF}"}},
      {WindowOperation::kBringUp, {"can you bring up {REF}", "bring up {REF} again"}}};
  return *t;
}

const std::vector<std::string> kThinkPlain = {
    "hmm", "ok", "interesting", "hmm interesting", "let me think",
    "i wonder what is going on here", "that's interesting", "wow", "ok cool",
    "i think i know what to look at next", "not sure yet", "this is useful",
    "so many things going on", "i want to understand the trend", "oh wow look at that spike",
    "let me think about what i want", "ok so", "yeah", "that makes sense",
    "well that is strange", "i am curious about something", "alright", "thanks",
    "hmm let me see"};
const std::vector<std::string> kThinkSlot = {
    "{C} seems really high", "i did not expect so much {C}", "i wonder about {C}",
    "there is more {C} than i expected", "{N} looks pretty bad", "maybe {N} is worse",
    "i want to know more about {C}", "i am curious about {C} {S}"};
const std::vector<std::string> kThinkRef = {
    "{REF} shows a spike", "hmm {REF} is interesting", "i like {REF}", "look at {REF}",
    "{REF} looks different from what i expected", "so {REF} has more {C}",
    "{REF} is pretty interesting", "i think {REF} is useful", "wow look at {REF}"};

const std::vector<std::string> kRecentRefs = {
    "this graph", "that graph", "this chart", "that chart", "this one", "this visualization",
    "that visualization", "the last graph", "the last one", "this plot", "the graph",
    "the chart"};
const std::vector<std::string> kOlderRefs = {"that other graph", "the other chart",
                                             "the earlier one", "that other one"};
const std::vector<std::string> kDescriptiveRefs = {"the {V} one", "the {V} chart",
                                                   "the {V} graph"};

class SessionGenerator {
 public:
  SessionGenerator(const KnowledgeOntology& ontology, const GeneratorConfig& config, Rng& rng)
      : ontology_(ontology), config_(config), rng_(rng) {}

  void Run(const std::string& session, std::vector<CorpusRecord>& out) {
    session_ = session;
    out_ = &out;
    screen_.clear();
    turn_ = 0;
    state_ = DialogueState{};
    const std::size_t cars = rng_.Between(config_.min_cars, config_.max_cars);
    for (std::size_t car = 1; car <= cars; ++car) {
      car_ = car;
      const std::size_t setup = rng_.Between(0, config_.max_setup);
      for (std::size_t i = 0; i < setup; ++i) ThinkAloud(Segment::kSetup);
      Request();
      const std::size_t conclusion = rng_.Between(0, config_.max_conclusion);
      for (std::size_t i = 0; i < conclusion; ++i) ThinkAloud(Segment::kConclusion);
    }
  }

 private:
  // Slot vocabulary.

  std::vector<std::string> Values(std::string_view slot) const {
    const ParentSlot& s = ontology_.slot(ontology_.RequireIndex(slot));
    std::vector<std::string> out;
    for (const auto& t : s.terms) {
      if (std::find(s.generic_terms.begin(), s.generic_terms.end(), t) != s.generic_terms.end()) {
        continue;
      }
      // "may" reads as a modal verb.
      if (t == "may") continue;
      out.push_back(t);
    }
    return out;
  }

  SlotPhrase Phrase(std::string prep, std::string text, std::string_view slot,
                    std::optional<std::string> value, std::size_t head_words) {
    SlotPhrase p;
    p.prep = std::move(prep);
    p.text = text;
    p.entity.slot = std::string(slot);
    p.entity.value = std::move(value);
    p.entity.text = text;
    auto words = SplitWords(text);
    words.resize(std::min(words.size(), head_words));
    p.entity.terms = std::move(words);
    return p;
  }

  SlotPhrase ValuePhrase(std::string prep, const std::string& term, std::string_view slot,
                         std::string suffix = "") {
    const std::size_t index = ontology_.RequireIndex(slot);
    std::string text = term + suffix;
    const std::size_t words = SplitWords(text).size();
    return Phrase(std::move(prep), text, slot, CanonicalValue(ontology_, index, term), words);
  }

  bool IsPlural(std::string_view slot, const std::string& term) const {
    return CanonicalValue(ontology_, ontology_.RequireIndex(slot), term) != term;
  }

  SlotPhrase CrimeValue() {
    const std::string term = rng_.Pick(Values("CRIME_TYPE"));
    if (!IsPlural("CRIME_TYPE", term) && rng_.Bernoulli(0.15)) {
      return ValuePhrase("", term, "CRIME_TYPE", rng_.Bernoulli(0.5) ? " incidents" : " crimes");
    }
    return ValuePhrase("", term, "CRIME_TYPE");
  }

  SlotPhrase CrimeAxis() {
    static const std::vector<std::pair<std::string, std::string>> kForms = {
        {"", "crimes"}, {"all", "crimes"}, {"", "offenses"}, {"all", "incidents"}};
    const auto& [prep, text] = rng_.Pick(kForms);
    return Phrase(prep, text, "CRIME_TYPE", std::nullopt, 1);
  }

  SlotPhrase NeighborhoodValue(bool with_prep) {
    const std::string term = rng_.Pick(Values("NEIGHBORHOOD"));
    const bool single = SplitWords(term).size() == 1;
    std::string prep = with_prep ? (rng_.Bernoulli(0.8) ? "in" : "around") : "";
    if (single && rng_.Bernoulli(0.4)) {
      return ValuePhrase(prep.empty() ? "the" : prep + " the", term, "NEIGHBORHOOD", " area");
    }
    return ValuePhrase(prep, term, "NEIGHBORHOOD");
  }

  SlotPhrase SpatialValue() {
    const double u = rng_.Uniform();
    if (u < 0.6) return NeighborhoodValue(true);
    if (u < 0.8) {
      const std::string term = rng_.Pick(Values("STREET"));
      static const std::vector<std::pair<std::string, std::string>> kForms = {
          {"on", " street"}, {"on", " avenue"}, {"along", " avenue"}};
      const auto& [prep, suffix] = rng_.Pick(kForms);
      return ValuePhrase(prep, term, "STREET", suffix);
    }
    const std::string term = rng_.Pick(Values("DISTRICT"));
    return ValuePhrase("in the", term, "DISTRICT", " district");
  }

  SlotPhrase SpatialAxis() {
    struct Form {
      const char* prep;
      const char* text;
      const char* slot;
      std::size_t head;
    };
    static const std::vector<Form> kForms = {
        {"by", "neighborhood", "NEIGHBORHOOD", 1}, {"across", "neighborhoods", "NEIGHBORHOOD", 1},
        {"for each", "neighborhood", "NEIGHBORHOOD", 1}, {"by", "area", "NEIGHBORHOOD", 1},
        {"by", "street", "STREET", 1}, {"per", "block", "STREET", 1},
        {"by", "district", "DISTRICT", 1}, {"across", "districts", "DISTRICT", 1},
        {"by", "police district", "DISTRICT", 2}};
    const Form& f = rng_.Pick(kForms);
    return Phrase(f.prep, f.text, f.slot, std::nullopt, f.head);
  }

  SlotPhrase TemporalAxis(std::string_view slot) {
    static const std::map<std::string, std::vector<std::pair<std::string, std::string>>,
                          std::less<>>
        kForms = {
            {"MONTH",
             {{"by", "month"}, {"by", "months"}, {"per", "month"}, {"by", "month of the year"},
              {"over the", "months"}}},
            {"DAY",
             {{"by", "day of the week"}, {"by", "day"}, {"by", "weekday"},
              {"for each", "day of the week"}, {"across", "weekdays"}, {"by", "day of week"}}},
            {"YEAR", {{"by", "year"}, {"per", "year"}, {"over the", "years"}, {"across", "years"}}},
            {"TIME_OF_DAY", {{"by", "hour"}, {"by", "hour of the day"}, {"per", "hour"}}},
            {"SEASON", {{"by", "season"}, {"across", "seasons"}, {"by", "seasons"}}}};
    const auto& [prep, text] = rng_.Pick(kForms.find(slot)->second);
    return Phrase(prep, text, slot, std::nullopt, 1);
  }

  std::string RandomTemporalSlot(const std::set<std::string>& exclude) {
    std::vector<std::string> slots;
    for (const char* s : {"MONTH", "DAY", "YEAR", "TIME_OF_DAY", "SEASON"}) {
      if (!exclude.count(s)) slots.push_back(s);
    }
    if (slots.empty()) return "MONTH";
    return rng_.Pick(slots);
  }

  SlotPhrase TemporalValue() {
    const std::string slot = rng_.Pick(std::vector<std::string>{"MONTH", "YEAR", "DAY",
                                                                "TIME_OF_DAY", "SEASON"});
    const std::string term = rng_.Pick(Values(slot));
    if (slot == "MONTH" || slot == "YEAR") {
      return ValuePhrase(rng_.Bernoulli(0.7) ? "in" : "during", term, slot);
    }
    if (slot == "DAY") {
      if (term == "weekend") return ValuePhrase("on the", term, slot);
      return ValuePhrase("on", term, slot);
    }
    if (slot == "TIME_OF_DAY") {
      static const std::set<std::string> kAt = {"night", "nights", "midnight", "noon",
                                                "nighttime"};
      if (kAt.count(term)) return ValuePhrase("at", term, slot);
      return ValuePhrase(rng_.Bernoulli(0.5) ? "in the" : "during the", term, slot);
    }
    return ValuePhrase(rng_.Bernoulli(0.5) ? "in the" : "during the", term, slot);
  }

  SlotPhrase ExtraValue() {
    if (rng_.Bernoulli(0.6)) {
      const std::string term = rng_.Pick(Values("LOCATION_TYPE"));
      const std::string prep = rng_.Pick(std::vector<std::string>{"in", "at", "near"});
      if (IsPlural("LOCATION_TYPE", term)) return ValuePhrase(prep, term, "LOCATION_TYPE");
      return ValuePhrase(prep + (rng_.Bernoulli(0.5) ? " a" : " the"), term, "LOCATION_TYPE");
    }
    const std::string term = rng_.Pick(Values("WEAPON"));
    if (IsPlural("WEAPON", term)) {
      return ValuePhrase(rng_.Bernoulli(0.5) ? "with" : "involving", term, "WEAPON");
    }
    return ValuePhrase("with a", term, "WEAPON");
  }

  // References.

  const OnScreen& PickReferent() {
    if (screen_.size() == 1 || rng_.Bernoulli(config_.p_most_recent)) return screen_.back();
    return screen_[rng_.Index(screen_.size() - 1)];
  }

  std::string ReferenceText(const OnScreen& target, bool allow_pronoun) {
    const bool recent = &target == &screen_.back();
    if (recent) {
      if (allow_pronoun && rng_.Bernoulli(0.2)) return "it";
      return rng_.Pick(kRecentRefs);
    }
    std::vector<std::string> values;
    for (const Entity& e : target.entities) {
      if (e.value) values.push_back(*e.value);
    }
    if (!values.empty() && rng_.Bernoulli(config_.p_descriptive)) {
      std::string t = rng_.Pick(kDescriptiveRefs);
      t.replace(t.find("{V}"), 3, rng_.Pick(values));
      return t;
    }
    return rng_.Pick(kOlderRefs);
  }

  void AddGestures(CorpusRecord& r, const OnScreen* referent) {
    if (referent && rng_.Bernoulli(config_.p_gesture)) {
      r.gestures.push_back({referent->id, true});
    } else if (!referent && !screen_.empty() && rng_.Bernoulli(config_.p_standalone_gesture)) {
      r.gestures.push_back({screen_[rng_.Index(screen_.size())].id, false});
    }
  }

  CorpusRecord NewRecord(Segment segment) {
    CorpusRecord r;
    r.session = session_;
    r.turn = ++turn_;
    r.car = car_;
    r.segment = segment;
    return r;
  }

  Handlers CommonHandlers(const std::string* ref_text) {
    Handlers h;
    if (ref_text) h["REF"] = [ref_text](Builder& b) { b.Ref(*ref_text); };
    h["C"] = [this](Builder& b) { b.Slot(CrimeValue()); };
    h["N"] = [this](Builder& b) { b.Slot(NeighborhoodValue(false)); };
    h["S"] = [this](Builder& b) { b.Slot(SpatialValue()); };
    h["X"] = [this](Builder& b) { b.Slot(ExtraValue()); };
    return h;
  }

  void ThinkAloud(Segment segment) {
    CorpusRecord r = NewRecord(segment);
    Builder b;
    const double p_ref = segment == Segment::kSetup ? config_.p_setup_reference
                                                    : config_.p_conclusion_reference;
    const OnScreen* referent = nullptr;
    std::string ref_text;
    if (!screen_.empty() && rng_.Bernoulli(p_ref)) {
      referent = &PickReferent();
      ref_text = ReferenceText(*referent, false);
      Expand(b, rng_.Pick(kThinkRef), CommonHandlers(&ref_text));
      r.referent = referent->id;
    } else if (rng_.Bernoulli(0.3)) {
      Expand(b, rng_.Pick(kThinkSlot), CommonHandlers(nullptr));
    } else {
      b.Plain(rng_.Pick(kThinkPlain));
    }
    b.Fill(r);
    AddGestures(r, referent);
    out_->push_back(std::move(r));
  }

  void Request() {
    double u = rng_.Uniform();
    if (screen_.empty()) u = 0.0;
    if (u < config_.p_create) {
      Create();
    } else if (u < config_.p_create + config_.p_modify) {
      Modify();
    } else {
      Window();
    }
  }

  PlotType GoldPlot(const std::vector<Entity>& entities, std::span<const Token> tokens) {
    const PlotType rule = InferPlotType(entities, ontology_, tokens);
    if (HasHeatmapCue(tokens)) return PlotType::kHeatmap;
    if (rule == PlotType::kLine) {
      return rng_.Bernoulli(config_.p_line_label) ? PlotType::kLine : PlotType::kBar;
    }
    if (rule == PlotType::kHeatmap) {
      return rng_.Bernoulli(config_.p_heatmap_label) ? PlotType::kHeatmap : PlotType::kBar;
    }
    const bool spatial = std::any_of(entities.begin(), entities.end(), [&](const Entity& e) {
      return ontology_.KindOf(e.slot) == SlotKind::kSpatial;
    });
    if (spatial && rng_.Bernoulli(config_.p_spatial_heatmap_label)) return PlotType::kHeatmap;
    return rule;
  }

  void Publish(CorpusRecord& r, std::vector<Entity> entities) {
    GoldSpec spec;
    spec.id = state_.AllocateId();
    spec.plot_type = GoldPlot(entities, r.tokens);
    spec.entities = std::move(entities);
    screen_.push_back({spec.id, spec.entities});
    r.new_spec = std::move(spec);
  }

  static std::vector<Entity> Dedupe(const std::vector<Entity>& entities) {
    std::vector<Entity> out;
    for (const Entity& e : entities) {
      const bool seen = std::any_of(out.begin(), out.end(), [&](const Entity& o) {
        return o.slot == e.slot && o.value == e.value;
      });
      if (!seen) out.push_back(e);
    }
    return out;
  }

  void MaybeQuestionMark(Builder& b, std::string_view lead) {
    if ((lead.starts_with("can") || lead.starts_with("could")) &&
        rng_.Bernoulli(config_.p_question_mark)) {
      b.Plain("?");
    }
  }

  void Create() {
    CorpusRecord r = NewRecord(Segment::kRequest);
    r.intent = std::string(kCreateVis);
    Builder b;
    const std::string& lead = rng_.Pick(kCreateLeads);
    b.Plain(lead);
    if (rng_.Bernoulli(0.85)) {
      b.Slot(CrimeValue());
      if (rng_.Bernoulli(0.10)) {
        b.Plain("and");
        b.Slot(CrimeValue());
      }
    } else {
      b.Slot(CrimeAxis());
    }
    if (rng_.Bernoulli(0.15)) b.Slot(ExtraValue());
    const double s = rng_.Uniform();
    if (s < 0.45) {
      b.Slot(SpatialValue());
    } else if (s < 0.60) {
      b.Slot(SpatialAxis());
    }
    if (rng_.Bernoulli(0.08)) b.Slot(TemporalValue());
    if (rng_.Bernoulli(0.20)) b.Slot(TemporalAxis(RandomTemporalSlot({})));
    if (rng_.Bernoulli(0.04)) {
      b.Plain(rng_.Pick(std::vector<std::string>{"on a map", "as a heat map", "on a heat map"}));
    }
    MaybeQuestionMark(b, lead);
    b.Fill(r);
    Publish(r, Dedupe(b.entities()));
    out_->push_back(std::move(r));
  }

  void Modify() {
    CorpusRecord r = NewRecord(Segment::kRequest);
    r.intent = std::string(kModifyVis);
    const OnScreen& referent = PickReferent();
    const std::string referent_id = referent.id;
    const std::vector<Entity> inherited = referent.entities;
    std::string ref_text = ReferenceText(referent, false);
    std::set<std::string> referent_temporal;
    for (const Entity& e : inherited) {
      if (ontology_.KindOf(e.slot) == SlotKind::kTemporal) referent_temporal.insert(e.slot);
    }

    Handlers h = CommonHandlers(&ref_text);
    h["T"] = [&](Builder& b) { b.Slot(TemporalAxis(RandomTemporalSlot(referent_temporal))); };
    h["S"] = [&](Builder& b) { b.Slot(rng_.Bernoulli(0.7) ? SpatialValue() : SpatialAxis()); };

    Builder b;
    const double u = rng_.Uniform();
    std::string tmpl;
    if (u < 0.26) {
      tmpl = rng_.Pick(kTemporalEdits);
    } else if (u < 0.32 && !referent_temporal.count("MONTH")) {
      tmpl = rng_.Pick(kMonthsOfYearEdits);
    } else if (u < 0.58) {
      tmpl = rng_.Pick(kCrimeEdits);
    } else if (u < 0.80) {
      tmpl = rng_.Pick(kSpatialEdits);
    } else if (u < 0.92) {
      tmpl = rng_.Pick(kExtraEdits);
    } else {
      tmpl = rng_.Pick(kCueEdits);
    }
    const bool months_of_year = tmpl.find("months of the year") != std::string::npos;
    if (months_of_year) {
      const std::size_t at = tmpl.find("for months of the year");
      Expand(b, tmpl.substr(0, at), h);
      b.Slot(Phrase("for", "months of the year", "MONTH", std::nullopt, 1));
      Expand(b, tmpl.substr(at + std::string("for months of the year").size()), h);
    } else {
      Expand(b, tmpl, h);
    }
    MaybeQuestionMark(b, tmpl);
    b.Fill(r);
    r.referent = referent_id;

    // Same-kind supersession: a new temporal or spatial filler replaces the
    // inherited one of that kind; categorical entities accumulate.
    std::vector<Entity> entities = b.entities();
    bool temporal = false;
    bool spatial = false;
    for (const Entity& e : entities) {
      temporal = temporal || ontology_.KindOf(e.slot) == SlotKind::kTemporal;
      spatial = spatial || ontology_.KindOf(e.slot) == SlotKind::kSpatial;
    }
    for (const Entity& e : inherited) {
      const SlotKind kind = ontology_.KindOf(e.slot);
      if ((kind == SlotKind::kTemporal && temporal) || (kind == SlotKind::kSpatial && spatial)) {
        continue;
      }
      entities.push_back(e);
    }
    AddGesturesFor(r, referent_id);
    Publish(r, Dedupe(entities));
    out_->push_back(std::move(r));
  }

  void AddGesturesFor(CorpusRecord& r, const std::string& id) {
    if (rng_.Bernoulli(config_.p_gesture)) r.gestures.push_back({id, true});
  }

  void Window() {
    CorpusRecord r = NewRecord(Segment::kRequest);
    r.intent = std::string(kWinMgmt);
    const OnScreen& referent = PickReferent();
    const std::string referent_id = referent.id;
    WindowOperation op = WindowOperation::kClose;
    if (!rng_.Bernoulli(config_.p_close)) {
      op = rng_.Pick(std::vector<WindowOperation>{WindowOperation::kMove,
                                                  WindowOperation::kMaximize,
                                                  WindowOperation::kMinimize,
                                                  WindowOperation::kBringUp});
    }
    std::string ref_text = ReferenceText(referent, true);
    Builder b;
    Expand(b, rng_.Pick(WindowTemplates().at(op)), CommonHandlers(&ref_text));
    b.Fill(r);
    r.referent = referent_id;
    r.window_op = op;
    AddGesturesFor(r, referent_id);
    if (op == WindowOperation::kClose) {
      screen_.erase(std::find_if(screen_.begin(), screen_.end(),
                                 [&](const OnScreen& s) { return s.id == referent_id; }));
    }
    out_->push_back(std::move(r));
  }

  const KnowledgeOntology& ontology_;
  const GeneratorConfig& config_;
  Rng& rng_;
  std::string session_;
  std::vector<CorpusRecord>* out_ = nullptr;
  std::vector<OnScreen> screen_;
  DialogueState state_;
  std::size_t turn_ = 0;
  std::size_t car_ = 0;
};

void CollectWords(std::string_view text, std::set<std::string>& out) {
  std::string t(text);
  std::size_t pos;
  while ((pos = t.find('{')) != std::string::npos) {
    t.replace(pos, t.find('}', pos) - pos + 1, " ");
  }
  for (auto& w : Tokenize(t)) out.insert(ToLower(w));
}

}  // namespace

std::vector<CorpusRecord> GenerateSyntheticCorpus(const KnowledgeOntology& ontology,
                                                  const GeneratorConfig& config) {
  if (config.min_cars == 0 || config.min_cars > config.max_cars) {
    throw ArgumentError("generator needs 1 <= min_cars <= max_cars");
  }
  Rng rng(config.seed);
  std::vector<CorpusRecord> out;
  SessionGenerator gen(ontology, config, rng);
  for (std::size_t s = 1; s <= config.sessions; ++s) {
    gen.Run("S" + FormatSpecId(s), out);
  }
  ValidateCorpus(out);
  return out;
}

std::vector<std::string> GeneratorVocabulary() {
  std::set<std::string> words;
  auto add_all = [&](const std::vector<std::string>& list) {
    for (const auto& t : list) CollectWords(t, words);
  };
  add_all(kCreateLeads);
  add_all(kTemporalEdits);
  add_all(kMonthsOfYearEdits);
  add_all(kCrimeEdits);
  add_all(kSpatialEdits);
  add_all(kExtraEdits);
  add_all(kCueEdits);
  add_all(kThinkPlain);
  add_all(kThinkSlot);
  add_all(kThinkRef);
  add_all(kRecentRefs);
  add_all(kOlderRefs);
  add_all(kDescriptiveRefs);
  for (const auto& [op, list] : WindowTemplates()) add_all(list);
  for (const char* w : {"incidents", "crimes", "all", "offenses", "in", "around", "the", "area",
                        "on", "along", "street", "avenue", "district", "by", "across", "for",
                        "each", "per", "neighborhood", "neighborhoods", "block", "districts",
                        "police", "month", "months", "of", "year", "over", "day", "week",
                        "weekday", "weekdays", "years", "hour", "season", "seasons", "during",
                        "at", "near", "a", "with", "involving", "and", "map", "as", "heat", "?",
                        "it"}) {
    words.insert(w);
  }
  return {words.begin(), words.end()};
}

}  // namespace vizref
