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

#include "vizref/evaluation.h"

#include <algorithm>
#include <cstdio>
#include <future>
#include <set>

#include "vizref/errors.h"
#include "vizref/establishment.h"

namespace vizref {

double Rate::Percent() const {
  return total == 0 ? 0.0 : 100.0 * static_cast<double>(correct) / static_cast<double>(total);
}

VisualizationSpec MaterializeGoldSpec(const GoldSpec& gold, std::size_t turn,
                                      const SlotExtractor& extractor, const CrimeTable* table,
                                      VectorMode mode) {
  std::vector<Entity> entities = gold.entities;
  for (Entity& e : entities) e.score = extractor.MakeFiller(e.slot, e.text, e.terms).score;
  EstablishContext context{&extractor, table, mode};
  return BuildSpec(gold.id, std::move(entities), gold.plot_type, turn, context);
}

namespace {

constexpr std::size_t kSegments = 2;

std::size_t PlotIndex(PlotType t) { return static_cast<std::size_t>(t); }

std::set<std::string> SlotSet(const std::vector<SlotFiller>& fillers) {
  std::set<std::string> out;
  for (const auto& f : fillers) out.insert(f.slot);
  return out;
}

std::set<std::string> SlotSet(const std::vector<Entity>& entities) {
  std::set<std::string> out;
  for (const auto& e : entities) out.insert(e.slot);
  return out;
}

struct SessionResult {
  std::vector<std::vector<Tag>> gold;
  std::vector<std::vector<Tag>> predicted;
  std::array<DetectionRow, kSegments> detection{};
  std::vector<ResolutionRow> resolution;
  std::size_t window1_violations = 0;
  std::size_t total_requests = 0;
  std::array<std::size_t, 5> bins{};
  Rate exact;
  Rate months;
  Rate swap;
  std::array<std::array<std::size_t, 3>, 3> confusion{};
  std::vector<Rate> slot_accuracy;
};

std::size_t QuartileBin(double percent) {
  if (percent <= 0.0) return 0;
  for (std::size_t i = 1; i < kQuartileEdges.size(); ++i) {
    if (percent <= kQuartileEdges[i]) return i;
  }
  return kQuartileEdges.size() - 1;
}

std::optional<std::size_t> FindMonthsOfYear(std::span<const Token> tokens) {
  static const std::array<std::string_view, 4> kPhrase = {"months", "of", "the", "year"};
  for (std::size_t i = 0; i + kPhrase.size() <= tokens.size(); ++i) {
    bool match = true;
    for (std::size_t k = 0; k < kPhrase.size() && match; ++k) {
      match = ToLower(tokens[i + k].surface) == kPhrase[k];
    }
    if (match) return i;
  }
  return std::nullopt;
}

bool TemporalSwapHolds(const VisualizationSpec& made, const VisualizationSpec& referent,
                       const std::vector<SlotFiller>& fillers, const KnowledgeOntology& ontology) {
  std::set<std::string> filler_temporal;
  for (const auto& f : fillers) {
    if (ontology.KindOf(f.slot) == SlotKind::kTemporal) filler_temporal.insert(f.slot);
  }
  if (filler_temporal.empty()) return false;
  std::set<std::string> made_temporal;
  for (const auto& e : made.entities) {
    if (ontology.KindOf(e.slot) == SlotKind::kTemporal) made_temporal.insert(e.slot);
  }
  if (made_temporal != filler_temporal) return false;
  auto has = [&](const Entity& e) {
    return std::any_of(made.entities.begin(), made.entities.end(), [&](const Entity& m) {
      return m.slot == e.slot && m.value == e.value;
    });
  };
  for (const auto& e : referent.entities) {
    if (ontology.KindOf(e.slot) == SlotKind::kCategorical && !has(e)) return false;
  }
  return true;
}

SessionResult EvaluateSession(std::span<const CorpusRecord> session,
                              const SlotExtractor& extractor, const CrimeTable* table,
                              const EvalConfig& config) {
  const KnowledgeOntology& ontology = extractor.ontology();
  const RecencySchedule schedule = ParseRecencySchedule(config.decay);
  SessionResult out;
  for (const Window& w : config.windows) {
    for (Segment s : {Segment::kSetup, Segment::kRequest}) {
      ResolutionRow row;
      row.window = w;
      row.segment = s;
      out.resolution.push_back(row);
    }
  }
  out.slot_accuracy.resize(config.windows.size());
  out.detection[0].segment = Segment::kSetup;
  out.detection[1].segment = Segment::kRequest;

  DialogueState state;
  for (const CorpusRecord& r : session) {
    state.turn = r.turn;
    const std::vector<Tag> tags = config.model ? Decode(*config.model, r.tokens) : r.tags;
    out.gold.push_back(r.tags);
    out.predicted.push_back(tags);

    ActionFrame frame = BuildUserAction(r.tokens, tags, std::nullopt, extractor);
    ActionFrame gesture_frame = frame;
    const auto gesture = r.ReferentialGesture();
    gesture_frame.gesture_target = gesture;
    gesture_frame.gest_ref = gesture.has_value() && frame.text_ref.has_value();

    if (r.segment != Segment::kConclusion) {
      const std::size_t seg = r.segment == Segment::kSetup ? 0 : 1;
      DetectionRow& det = out.detection[seg];
      const auto gold_spans = ExtractSpans(r.tags);
      const auto pred_spans = ExtractSpans(tags);
      for (const auto& span : gold_spans) {
        det.text.Add(std::find(pred_spans.begin(), pred_spans.end(), span) != pred_spans.end());
      }
      for (std::size_t i = 0; i < tags.size(); ++i) det.tokens.Add(tags[i] == r.tags[i]);
      if (gesture) det.gesture.Add(frame.text_ref.has_value());

      if (r.referent) {
        const SemanticVector expression = ExpressionVector(frame, extractor, config.mode);
        for (std::size_t wi = 0; wi < config.windows.size(); ++wi) {
          ResolutionRow& row = out.resolution[wi * kSegments + seg];
          ResolverConfig rc{config.windows[wi], config.cutoff, schedule, true};
          auto check_window1 = [&](const ResolutionResult& res) {
            if (res.ok() && !config.windows[wi].unlimited() && config.windows[wi].size() == 1 &&
                *res.id != state.history.AtRank(1).id) {
              ++out.window1_violations;
            }
          };
          if (gesture) {
            const auto res = ResolveReference(gesture_frame, state.history, expression, rc);
            check_window1(res);
            const bool ok = res.ok() && *res.id == *r.referent;
            row.gesture.Add(ok);
            row.all.Add(ok);
          }
          if (r.HasTextReference()) {
            rc.use_gesture = false;
            const auto res = ResolveReference(frame, state.history, expression, rc);
            check_window1(res);
            const bool ok = res.ok() && *res.id == *r.referent;
            row.text.Add(ok);
            row.all.Add(ok);
          }
        }
      }
    }

    if (auto at = FindMonthsOfYear(r.tokens)) {
      const bool merged = std::any_of(frame.fillers.begin(), frame.fillers.end(), [&](const auto& f) {
        return f.span.begin == *at && f.span.end == *at + 4 && f.slot == "MONTH";
      });
      out.months.Add(merged);
    }

    const bool creates = r.segment == Segment::kRequest && r.intent &&
                         (*r.intent == kCreateVis || *r.intent == kModifyVis);
    if (creates) {
      ++out.total_requests;
      std::set<std::string> gold_slots;
      for (const auto& f : r.fillers) gold_slots.insert(f.slot);
      const auto predicted_slots = SlotSet(frame.fillers);
      std::size_t hit = 0;
      for (const auto& s : gold_slots) hit += predicted_slots.count(s);
      const double percent =
          gold_slots.empty() ? 100.0
                             : 100.0 * static_cast<double>(hit) / static_cast<double>(gold_slots.size());
      ++out.bins[QuartileBin(percent)];
      out.exact.Add(predicted_slots == gold_slots);

      if (r.new_spec) {
        const PlotType predicted = InferPlotType(r.new_spec->entities, ontology, r.tokens);
        ++out.confusion[PlotIndex(r.new_spec->plot_type)][PlotIndex(predicted)];
        const auto gold_entity_slots = SlotSet(r.new_spec->entities);
        const auto filler_entities = EntitiesFromFillers(frame.fillers, ontology);
        for (std::size_t wi = 0; wi < config.windows.size(); ++wi) {
          const VisualizationSpec* referent = nullptr;
          if (*r.intent == kModifyVis && gesture_frame.HasReference()) {
            ResolverConfig rc{config.windows[wi], config.cutoff, schedule, true};
            const auto res = ResolveReference(
                gesture_frame, state.history, ExpressionVector(frame, extractor, config.mode), rc);
            if (res.ok()) referent = state.history.Find(*res.id);
          }
          const auto combined = CombineEntities(filler_entities, referent, ontology);
          out.slot_accuracy[wi].Add(SlotSet(combined) == gold_entity_slots);
        }
      }

      if (*r.intent == kModifyVis && r.referent) {
        const VisualizationSpec* referent = state.history.Find(*r.referent);
        const bool gold_temporal_filler =
            std::any_of(r.fillers.begin(), r.fillers.end(), [&](const GoldFiller& f) {
              return ontology.KindOf(f.slot) == SlotKind::kTemporal;
            });
        const bool temporal_axis =
            referent && std::any_of(referent->entities.begin(), referent->entities.end(),
                                    [&](const Entity& e) {
                                      return e.IsAxis() &&
                                             ontology.KindOf(e.slot) == SlotKind::kTemporal;
                                    });
        if (gold_temporal_filler && temporal_axis) {
          DialogueState scratch = state;
          while (scratch.history.Contains(FormatSpecId(scratch.next_id))) ++scratch.next_id;
          ActionFrame edit = frame;
          edit.intent = std::string(kModifyVis);
          edit.referent_id = referent->id;
          EstablishContext context{&extractor, table, config.mode};
          const Establishment made = EstablishEntity(edit, referent, scratch, context, r.tokens);
          out.swap.Add(TemporalSwapHolds(made.spec, *referent, frame.fillers, ontology));
        }
      }
    }

    if (r.new_spec) {
      state.history.Add(MaterializeGoldSpec(*r.new_spec, r.turn, extractor, table, config.mode));
    }
    if (r.window_op == WindowOperation::kClose && r.referent) state.history.Remove(*r.referent);
  }
  return out;
}

}  // namespace

EvalReport RunFullEval(std::span<const CorpusRecord> corpus, const SlotExtractor& extractor,
                       const CrimeTable* table, const EvalConfig& config) {
  if (config.cutoff < 0.0 || config.cutoff > 1.0) throw ArgumentError("cutoff must be in [0,1]");
  ParseRecencySchedule(config.decay);
  const auto ranges = SessionRanges(corpus);
  std::vector<SessionResult> results(ranges.size());
  auto run = [&](std::size_t i) {
    return EvaluateSession(corpus.subspan(ranges[i].first, ranges[i].second - ranges[i].first),
                           extractor, table, config);
  };
  if (config.threads > 1) {
    std::vector<std::future<SessionResult>> futures;
    for (std::size_t i = 0; i < ranges.size(); ++i) {
      futures.push_back(std::async(std::launch::async, run, i));
    }
    for (std::size_t i = 0; i < ranges.size(); ++i) results[i] = futures[i].get();
  } else {
    for (std::size_t i = 0; i < ranges.size(); ++i) results[i] = run(i);
  }

  EvalReport report;
  report.tag_source = config.model ? "model" : "gold";
  report.vector_mode = std::string(VectorModeName(config.mode));
  report.decay = config.decay;
  report.cutoff = config.cutoff;
  report.records = corpus.size();
  report.sessions = ranges.size();
  report.detection = {DetectionRow{Segment::kSetup, {}, {}, {}},
                      DetectionRow{Segment::kRequest, {}, {}, {}}};
  for (const Window& w : config.windows) {
    for (Segment s : {Segment::kSetup, Segment::kRequest}) {
      ResolutionRow row;
      row.window = w;
      row.segment = s;
      report.resolution.push_back(row);
    }
    report.slot_accuracy.emplace_back(w, Rate{});
  }
  std::vector<std::vector<Tag>> gold;
  std::vector<std::vector<Tag>> predicted;
  std::array<std::array<std::size_t, 3>, 3> confusion{};
  for (const SessionResult& s : results) {
    gold.insert(gold.end(), s.gold.begin(), s.gold.end());
    predicted.insert(predicted.end(), s.predicted.begin(), s.predicted.end());
    for (std::size_t i = 0; i < kSegments; ++i) {
      report.detection[i].text.Merge(s.detection[i].text);
      report.detection[i].tokens.Merge(s.detection[i].tokens);
      report.detection[i].gesture.Merge(s.detection[i].gesture);
    }
    for (std::size_t i = 0; i < report.resolution.size(); ++i) {
      report.resolution[i].gesture.Merge(s.resolution[i].gesture);
      report.resolution[i].text.Merge(s.resolution[i].text);
      report.resolution[i].all.Merge(s.resolution[i].all);
    }
    report.window1_violations += s.window1_violations;
    report.total_requests += s.total_requests;
    for (std::size_t b = 0; b < 5; ++b) report.quartile_bins[b] += s.bins[b];
    report.exact_slot_set.Merge(s.exact);
    report.months_of_year_merge.Merge(s.months);
    report.establishment_swap.Merge(s.swap);
    for (std::size_t g = 0; g < 3; ++g) {
      for (std::size_t p = 0; p < 3; ++p) confusion[g][p] += s.confusion[g][p];
    }
    for (std::size_t w = 0; w < report.slot_accuracy.size(); ++w) {
      report.slot_accuracy[w].second.Merge(s.slot_accuracy[w]);
    }
  }
  report.span = SpanF1(gold, predicted);
  report.token_accuracy = TokenAccuracy(gold, predicted);
  std::size_t running = 0;
  for (std::size_t b = 0; b < 5; ++b) {
    running += report.quartile_bins[b];
    report.quartile_cumulative[b] = running;
  }
  for (PlotType t : {PlotType::kBar, PlotType::kLine, PlotType::kHeatmap}) {
    const std::size_t c = PlotIndex(t);
    PlotClassScore& score = report.plot[c];
    score.type = t;
    score.true_positives = confusion[c][c];
    for (std::size_t o = 0; o < 3; ++o) {
      score.support += confusion[c][o];
      if (o == c) continue;
      score.false_positives += confusion[o][c];
      score.false_negatives += confusion[c][o];
    }
    const double tp = static_cast<double>(score.true_positives);
    const double pp = tp + static_cast<double>(score.false_positives);
    const double ap = tp + static_cast<double>(score.false_negatives);
    score.precision = pp > 0 ? tp / pp : 0.0;
    score.recall = ap > 0 ? tp / ap : 0.0;
    score.f1 = score.precision + score.recall > 0
                   ? 2 * score.precision * score.recall / (score.precision + score.recall)
                   : 0.0;
  }
  return report;
}

namespace {

std::string Fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, v);
  return buf;
}

std::string Cell(const Rate& r) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%6.1f (%zu)", r.Percent(), r.total);
  return buf;
}

Json RateJson(const Rate& r) {
  Json j;
  j["percent"] = r.Percent();
  j["correct"] = r.correct;
  j["total"] = r.total;
  return j;
}

std::string Pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

}  // namespace

std::string ReportToText(const EvalReport& r) {
  std::string out;
  out += "vizref evaluation\n";
  out += "  tags: " + r.tag_source + "  vectors: " + r.vector_mode + "  decay: " + r.decay +
         "  cutoff: " + Fmt("%.3g", r.cutoff) + "\n";
  out += "  records: " + std::to_string(r.records) + "  sessions: " + std::to_string(r.sessions) +
         "\n\n";

  out += "Reference detection, accuracy % (denominator)\n";
  out += "  " + Pad("label", 22) + Pad("setup", 16) + "request\n";
  auto det_line = [&](const std::string& label, auto field) {
    out += "  " + Pad(label, 22);
    for (const auto& row : r.detection) out += Pad(Cell(row.*field), 16);
    out += "\n";
  };
  det_line("text ref (span exact)", &DetectionRow::text);
  det_line("text ref (token)", &DetectionRow::tokens);
  det_line("gesture ref", &DetectionRow::gesture);
  out += "  span P/R/F1 (all segments): " + Fmt("%.3f", r.span.precision) + " / " +
         Fmt("%.3f", r.span.recall) + " / " + Fmt("%.3f", r.span.f1) +
         "   token accuracy: " + Fmt("%.3f", r.token_accuracy) + "\n\n";

  out += "Resolution accuracy % (denominator) by window\n";
  for (Segment seg : {Segment::kSetup, Segment::kRequest}) {
    out += "  " + std::string(SegmentName(seg)) + "\n";
    out += "    " + Pad("ref", 8);
    for (const auto& row : r.resolution) {
      if (row.segment == seg) out += Pad("win=" + row.window.ToString(), 16);
    }
    out += "\n";
    for (auto [label, field] :
         {std::pair{"gest.", &ResolutionRow::gesture}, std::pair{"text", &ResolutionRow::text},
          std::pair{"all", &ResolutionRow::all}}) {
      out += "    " + Pad(label, 8);
      for (const auto& row : r.resolution) {
        if (row.segment == seg) out += Pad(Cell(row.*field), 16);
      }
      out += "\n";
    }
  }
  out += "  window-1 results other than the most recent entry: " +
         std::to_string(r.window1_violations) + "\n\n";

  out += "Slots detected per request (" + std::to_string(r.total_requests) +
         " CREATEVIS/MODIFYVIS requests)\n";
  out += "    " + Pad("", 12);
  for (int edge : kQuartileEdges) out += Pad((edge == 0 ? "=0" : "<=" + std::to_string(edge)), 8);
  out += "\n    " + Pad("per bin", 12);
  for (auto n : r.quartile_bins) out += Pad(std::to_string(n), 8);
  out += "\n    " + Pad("cumulative", 12);
  for (auto n : r.quartile_cumulative) out += Pad(std::to_string(n), 8);
  out += "\n";
  out += "  exact slot-set match:        " + Cell(r.exact_slot_set) + "\n";
  out += "  \"months of the year\" -> MONTH: " + Cell(r.months_of_year_merge) + "\n";
  out += "  temporal swap on edits:      " + Cell(r.establishment_swap) + "\n\n";

  out += "Plot type F1\n";
  for (const auto& p : r.plot) {
    out += "  " + Pad(std::string(PlotTypeName(p.type)), 10) + Fmt("%.3f", p.f1) +
           "  (P " + Fmt("%.3f", p.precision) + ", R " + Fmt("%.3f", p.recall) + ", n " +
           std::to_string(p.support) + ")\n";
  }
  out += "\nSlot accuracy % (denominator) by window\n";
  for (const auto& [w, rate] : r.slot_accuracy) {
    out += "  " + Pad("win=" + w.ToString(), 10) + Cell(rate) + "\n";
  }
  return out;
}

Json ReportToJson(const EvalReport& r) {
  Json j;
  j["tag_source"] = r.tag_source;
  j["vector_mode"] = r.vector_mode;
  j["decay"] = r.decay;
  j["cutoff"] = r.cutoff;
  j["records"] = r.records;
  j["sessions"] = r.sessions;
  Json det = Json::array();
  for (const auto& row : r.detection) {
    Json d;
    d["segment"] = SegmentName(row.segment);
    d["text_span"] = RateJson(row.text);
    d["text_token"] = RateJson(row.tokens);
    d["gesture"] = RateJson(row.gesture);
    det.push_back(std::move(d));
  }
  Json span;
  span["precision"] = r.span.precision;
  span["recall"] = r.span.recall;
  span["f1"] = r.span.f1;
  span["token_accuracy"] = r.token_accuracy;
  j["detection"] = {{"segments", std::move(det)}, {"span", std::move(span)}};
  Json res = Json::array();
  for (const auto& row : r.resolution) {
    Json x;
    x["window"] = row.window.ToString();
    x["segment"] = SegmentName(row.segment);
    x["gesture"] = RateJson(row.gesture);
    x["text"] = RateJson(row.text);
    x["all"] = RateJson(row.all);
    res.push_back(std::move(x));
  }
  j["resolution"] = std::move(res);
  j["window1_violations"] = r.window1_violations;
  Json slots;
  slots["total_requests"] = r.total_requests;
  Json edges = Json::array();
  for (int e : kQuartileEdges) edges.push_back(e == 0 ? "=0" : "<=" + std::to_string(e));
  slots["bins"] = std::move(edges);
  slots["per_bin"] = r.quartile_bins;
  slots["cumulative"] = r.quartile_cumulative;
  slots["exact_slot_set"] = RateJson(r.exact_slot_set);
  slots["months_of_year_merge"] = RateJson(r.months_of_year_merge);
  slots["establishment_swap"] = RateJson(r.establishment_swap);
  j["slots"] = std::move(slots);
  Json plot = Json::array();
  for (const auto& p : r.plot) {
    Json x;
    x["type"] = PlotTypeName(p.type);
    x["f1"] = p.f1;
    x["precision"] = p.precision;
    x["recall"] = p.recall;
    x["support"] = p.support;
    plot.push_back(std::move(x));
  }
  j["plot_type"] = std::move(plot);
  Json acc = Json::array();
  for (const auto& [w, rate] : r.slot_accuracy) {
    Json x;
    x["window"] = w.ToString();
    x["accuracy"] = RateJson(rate);
    acc.push_back(std::move(x));
  }
  j["slot_accuracy"] = std::move(acc);
  return j;
}

std::string ReplaySession(std::span<const CorpusRecord> session, const SlotExtractor& extractor,
                          const CrimeTable* table, const EngineConfig& config,
                          const CrfModel* model) {
  DialogueEngine engine(extractor, table, config);
  std::string out;
  for (const CorpusRecord& r : session) {
    TurnInput in;
    in.utterance = JoinSurface(r.tokens, 0, r.tokens.size());
    in.tokens = r.tokens;
    in.tags = model ? Decode(*model, r.tokens) : r.tags;
    in.gesture = r.AnyGesture();
    in.intent = r.intent.value_or("OTHER");
    in.window_op = r.window_op;
    out += Serialize(TurnRecordToJson(engine.ProcessTurn(in)));
    out += '\n';
  }
  return out;
}

}  // namespace vizref
