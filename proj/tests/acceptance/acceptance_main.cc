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


// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failing criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <httplib.h>

#include "oracles.h"
#include "test_support.h"
#include "vizref/crf.h"
#include "vizref/evaluation.h"
#include "vizref/http_service.h"
#include "vizref/resolution.h"
#include "vizref/session.h"
#include "vizref/spans.h"

namespace vizref {
namespace {

using testing::Fixture;
using testing::FixtureCorpus;

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::string Fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), format, a, b, c);
  return buf;
}

const EvalReport& GoldReport() {
  static const EvalReport report =
      RunFullEval(FixtureCorpus(), Fixture().extractor(), Fixture().table());
  return report;
}

Outcome ViterbiOracle() {
  const auto start = Clock::now();
  std::mt19937_64 rng(20260101);
  std::size_t agree = 0;
  constexpr std::size_t kPairs = 200;
  for (std::size_t i = 0; i < kPairs; ++i) {
    const std::size_t length = 1 + i % 8;
    const auto tokens = testing::RandomUtterance(rng, length);
    const CrfModel model = testing::RandomModel(rng, tokens, i % 2 == 0);
    if (Decode(model, tokens) == testing::BruteForceDecode(model, tokens)) ++agree;
  }
  const double secs = Seconds(start);
  return {agree == kPairs && secs < 10.0,
          Fmt("%.0f/200 exact, %.2fs", static_cast<double>(agree), secs)};
}

Outcome RecencyCheck() {
  const std::vector<double> expected = {1.0, 1.0, 1.0, 2.0 / 3.0, 1.0 / 3.0, 0.0};
  const auto w6 = RecencyWeights(6);
  bool ok = w6.size() == expected.size();
  for (std::size_t i = 0; ok && i < expected.size(); ++i) {
    ok = std::abs(w6[i] - expected[i]) <= 1e-12;
  }
  std::size_t properties = 0;
  for (std::size_t n = 1; n <= 100; ++n) {
    const auto w = RecencyWeights(n);
    bool good = w.size() == n && w.front() == 1.0;
    for (std::size_t i = 1; good && i < n; ++i) good = w[i] <= w[i - 1];
    const std::size_t head = (n + 1) / 2;
    for (std::size_t i = 0; good && i < head; ++i) good = w[i] == 1.0;
    if (good && n > 1) good = w.back() == 0.0;
    if (good) ++properties;
  }
  return {ok && properties == 100,
          std::string("n=6 ") + (ok ? "exact" : "mismatch") + ", properties " +
              std::to_string(properties) + "/100"};
}

Outcome StructuralCells() {
  const auto& r = GoldReport();
  bool zero = true;
  bool full = true;
  std::size_t gestures = 0;
  for (const auto& row : r.resolution) {
    if (row.window == Window::Of(0)) {
      zero = zero && row.gesture.Percent() == 0.0 && row.text.Percent() == 0.0 &&
             row.all.Percent() == 0.0;
    }
    if (row.window.unlimited() && row.gesture.total > 0) {
      gestures += row.gesture.total;
      full = full && row.gesture.Percent() == 100.0;
    }
  }
  const bool ok = zero && full && gestures > 0 && r.window1_violations == 0;
  return {ok, std::string("window0 ") + (zero ? "0.0" : "nonzero") + ", gestures@inf " +
                  (full ? "100.0" : "<100") + " over " + std::to_string(gestures) +
                  ", window1 violations " + std::to_string(r.window1_violations)};
}

Outcome DetectionRegression() {
  const auto start = Clock::now();
  const auto tagged = ToTaggedUtterances(FixtureCorpus());
  const auto cv = CrossValidateCrf(tagged, 5);
  const double secs = Seconds(start);
  return {cv.pooled.f1 >= 0.80 && secs < 300.0,
          Fmt("5-fold span F1 %.4f (floor 0.80), %.1fs", cv.pooled.f1, secs)};
}

Outcome SlotPipeline() {
  const auto& r = GoldReport();
  const bool ok = r.exact_slot_set.Percent() >= 75.0 &&
                  r.quartile_cumulative.back() == r.total_requests && r.total_requests > 0 &&
                  r.months_of_year_merge.total > 0 &&
                  r.months_of_year_merge.correct == r.months_of_year_merge.total;
  return {ok, Fmt("exact slot set %.1f%%, <=100 row %.0f of %.0f ARs",
                  r.exact_slot_set.Percent(), static_cast<double>(r.quartile_cumulative.back()),
                  static_cast<double>(r.total_requests)) +
                  ", months merge " + std::to_string(r.months_of_year_merge.correct) + "/" +
                  std::to_string(r.months_of_year_merge.total)};
}

Outcome EstablishmentSwap() {
  const auto& s = GoldReport().establishment_swap;
  return {s.total > 0 && s.correct == s.total,
          std::to_string(s.correct) + "/" + std::to_string(s.total) + " temporal swaps"};
}

Outcome PlotOrdering() {
  const auto& p = GoldReport().plot;
  return {p[0].f1 >= p[1].f1 && p[1].f1 >= p[2].f1,
          Fmt("F1 bar %.3f, line %.3f, heatmap %.3f", p[0].f1, p[1].f1, p[2].f1)};
}

Outcome ReplayDeterminism() {
  const auto& corpus = FixtureCorpus();
  std::size_t same = 0;
  const auto ranges = SessionRanges(corpus);
  const EngineConfig config;
  for (const auto& [b, e] : ranges) {
    std::span<const CorpusRecord> session(corpus.data() + b, e - b);
    const auto a = ReplaySession(session, Fixture().extractor(), Fixture().table(), config);
    const auto c = ReplaySession(session, Fixture().extractor(), Fixture().table(), config);
    if (!a.empty() && a == c) ++same;
  }
  const auto again = RunFullEval(corpus, Fixture().extractor(), Fixture().table());
  const bool report_same = Serialize(ReportToJson(again)) == Serialize(ReportToJson(GoldReport()));
  return {same == ranges.size() && report_same,
          std::to_string(same) + "/" + std::to_string(ranges.size()) +
              " sessions identical, report " + (report_same ? "identical" : "differs")};
}

bool HasEntity(const Json& spec, const std::string& slot, const Json& value) {
  for (const auto& e : spec.at("entities")) {
    if (e.at("slot") == slot && e.at("value") == value) return true;
  }
  return false;
}

Outcome ServiceScenario() {
  SessionManager manager(Fixture().extractor(), testing::FixtureModel(), Fixture().table());
  HttpService service(manager);
  const int port = service.Bind("127.0.0.1", 0);
  std::thread server([&] { service.Listen(); });
  Outcome out{false, "no response"};
  {
    httplib::Client c("127.0.0.1", port);
    c.set_read_timeout(30, 0);
    auto created = c.Post("/sessions", "", "application/json");
    if (created && created->status == 201) {
      const std::string id = Json::parse(created->body).at("session").get<std::string>();
      Json last;
      for (const char* u :
           {"can I see theft in the downtown area", "can you show that graph by day of the week?"}) {
        auto r = c.Post("/sessions/" + id + "/turns", Serialize(Json{{"utterance", u}}),
                        "application/json");
        if (!r || r->status != 200) break;
        last = Json::parse(r->body);
      }
      if (!last.is_null()) {
        const Json& specs = last.at("screen_update").at("payload").at("visualizations");
        const bool ok = specs.size() == 2 && specs[1].at("plot_type") == "line" &&
                        HasEntity(specs[1], "CRIME_TYPE", "theft") &&
                        HasEntity(specs[1], "NEIGHBORHOOD", "downtown") &&
                        HasEntity(specs[1], "DAY", nullptr) &&
                        specs[1].at("axes") == Json::array({"DAY"});
        out = {ok, std::to_string(specs.size()) + " specs, second " +
                       (specs.size() == 2 ? specs[1].at("title").get<std::string>() : "missing")};
      }
    }
  }
  service.Stop();
  server.join();
  return out;
}

}  // namespace
}  // namespace vizref

int main() {
  using vizref::Outcome;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"viterbi_oracle", vizref::ViterbiOracle},
      {"recency_schedule", vizref::RecencyCheck},
      {"structural_resolution_cells", vizref::StructuralCells},
      {"detection_regression", vizref::DetectionRegression},
      {"slot_pipeline", vizref::SlotPipeline},
      {"entity_establishment", vizref::EstablishmentSwap},
      {"plot_type_ordering", vizref::PlotOrdering},
      {"replay_determinism", vizref::ReplayDeterminism},
      {"service_scenario", vizref::ServiceScenario},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures;
}
