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


#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "test_support.h"
#include "vizref/entity.h"
#include "vizref/errors.h"
#include "vizref/resolution.h"

namespace vizref {
namespace {

using testing::Fixture;

VisualizationSpec Spec(std::string id, SemanticVector v) {
  VisualizationSpec s;
  s.id = std::move(id);
  s.semantic_vector = v;
  return s;
}

ActionFrame TextFrame() {
  ActionFrame f;
  f.text_ref = TextReference{{0, 2}, "that graph"};
  return f;
}

ActionFrame GestureFrame(std::string target) {
  ActionFrame f = TextFrame();
  f.gest_ref = true;
  f.gesture_target = std::move(target);
  return f;
}

SemanticVector RandomVector(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  SemanticVector v;
  for (double& x : v.values) x = u(rng) < 0.4 ? 0.0 : u(rng);
  return v;
}

DialogueHistory RandomHistory(std::mt19937_64& rng, std::size_t n) {
  DialogueHistory h;
  for (std::size_t i = 0; i < n; ++i) h.Add(Spec(FormatSpecId(i + 1), RandomVector(rng)));
  return h;
}

TEST(Recency, SixEntries) {
  const auto w = RecencyWeights(6);
  const std::vector<double> expected = {1.0, 1.0, 1.0, 2.0 / 3.0, 1.0 / 3.0, 0.0};
  ASSERT_EQ(w.size(), 6u);
  for (std::size_t i = 0; i < 6; ++i) EXPECT_NEAR(w[i], expected[i], 1e-12);
}

TEST(Recency, SmallCases) {
  EXPECT_EQ(RecencyWeights(1), std::vector<double>{1.0});
  EXPECT_TRUE(RecencyWeights(0).empty());
  const auto w5 = RecencyWeights(5);
  const std::vector<double> expected5 = {1.0, 1.0, 1.0, 0.5, 0.0};
  for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(w5[i], expected5[i], 1e-12);
  EXPECT_EQ(RecencyWeights(2), (std::vector<double>{1.0, 0.0}));
}

TEST(Recency, PropertiesUpToOneHundred) {
  for (std::size_t n = 1; n <= 100; ++n) {
    const auto w = RecencyWeights(n);
    ASSERT_EQ(w.size(), n);
    const std::size_t head = (n + 1) / 2;
    for (std::size_t i = 0; i < head; ++i) EXPECT_EQ(w[i], 1.0) << n;
    for (std::size_t i = 1; i < n; ++i) EXPECT_LE(w[i], w[i - 1]) << n;
    if (n >= 2) EXPECT_EQ(w.back(), 0.0) << n;
    // Linear tail: constant step.
    for (std::size_t i = head + 1; i < n; ++i) {
      EXPECT_NEAR(w[i - 1] - w[i], 1.0 / static_cast<double>(n - head), 1e-12) << n;
    }
  }
  EXPECT_EQ(FlatRecencyWeights(3), (std::vector<double>(3, 1.0)));
  EXPECT_THROW(ParseRecencySchedule("cubic"), ArgumentError);
}

TEST(Window, ParseAndClamp) {
  EXPECT_TRUE(Window::Parse("inf").unlimited());
  EXPECT_EQ(Window::Parse("1").size(), 1u);
  EXPECT_EQ(Window::Of(3).Clamp(2), 2u);
  EXPECT_EQ(Window::Unlimited().Clamp(7), 7u);
  EXPECT_EQ(Window::Of(0).ToString(), "0");
  EXPECT_THROW(Window::Parse("-1"), ValidationError);
  EXPECT_THROW(Window::Parse("x"), ValidationError);
}

TEST(Resolve, Failures) {
  DialogueHistory empty;
  ResolverConfig config;
  EXPECT_EQ(ResolveReference(ActionFrame{}, empty, {}, config).failure,
            ResolutionFailure::kNoReference);
  EXPECT_EQ(ResolveReference(TextFrame(), empty, {}, config).failure,
            ResolutionFailure::kEmptyHistory);
  DialogueHistory h;
  h.Add(Spec("01", {}));
  config.window = Window::Of(0);
  EXPECT_EQ(ResolveReference(TextFrame(), h, {}, config).failure, ResolutionFailure::kEmptyWindow);
  EXPECT_EQ(ResolveReference(GestureFrame("01"), h, {}, config).failure,
            ResolutionFailure::kEmptyWindow);
}

TEST(Resolve, GestureInsideAndOutsideWindow) {
  DialogueHistory h;
  h.Add(Spec("08-3", {}));
  h.Add(Spec("09", {}));
  ResolverConfig config;
  auto r = ResolveReference(GestureFrame("08-3"), h, {}, config);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(*r.id, "08-3");
  EXPECT_EQ(r.score, 1.0);
  EXPECT_TRUE(r.by_gesture);
  config.window = Window::Of(1);
  r = ResolveReference(GestureFrame("08-3"), h, {}, config);
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(r.failure, ResolutionFailure::kGestureOutsideWindow);
  EXPECT_TRUE(ResolveReference(GestureFrame("09"), h, {}, config).ok());
  // A gesture without a text reference is not referential.
  ActionFrame bare;
  bare.gesture_target = "09";
  EXPECT_EQ(ResolveReference(bare, h, {}, config).failure, ResolutionFailure::kNoReference);
}

TEST(Resolve, StrictCutoffAndRecencyTies) {
  SemanticVector a;
  a.values[0] = 1.0;
  DialogueHistory h;
  h.Add(Spec("01", a));
  h.Add(Spec("02", a));
  ResolverConfig config;
  auto r = ResolveReference(TextFrame(), h, a, config);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(*r.id, "02");
  config.cutoff = 1.0;
  r = ResolveReference(TextFrame(), h, a, config);
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(r.failure, ResolutionFailure::kBelowCutoff);
  EXPECT_DOUBLE_EQ(r.score, 1.0);
}

TEST(Resolve, ZeroExpressionFallsBackToRecency) {
  std::mt19937_64 rng(2);
  const DialogueHistory h = RandomHistory(rng, 5);
  const auto r = ResolveReference(TextFrame(), h, SemanticVector{}, ResolverConfig{});
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(*r.id, h.AtRank(1).id);
}

TEST(Resolve, WindowOneOnlyReturnsMostRecent) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 500; ++trial) {
    const DialogueHistory h = RandomHistory(rng, 1 + trial % 9);
    ResolverConfig config;
    config.window = Window::Of(1);
    config.cutoff = (trial % 5) * 0.2;
    const auto r = ResolveReference(TextFrame(), h, RandomVector(rng), config);
    if (r.ok()) EXPECT_EQ(*r.id, h.AtRank(1).id);
  }
}

TEST(Resolve, InvariantToScalingCandidateVectors) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> scale(0.05, 20.0);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 8;
    const DialogueHistory h = RandomHistory(rng, n);
    const double k = scale(rng);
    DialogueHistory scaled;
    for (const auto& e : h.entries()) {
      auto s = e;
      for (double& x : s.semantic_vector.values) x *= k;
      scaled.Add(s);
    }
    const SemanticVector expr = RandomVector(rng);
    for (double cutoff : {0.0, 0.2, 0.5}) {
      ResolverConfig config;
      config.cutoff = cutoff;
      const auto a = ResolveReference(TextFrame(), h, expr, config);
      const auto b = ResolveReference(TextFrame(), scaled, expr, config);
      EXPECT_EQ(a.id, b.id);
      EXPECT_EQ(a.failure, b.failure);
      EXPECT_NEAR(a.score, b.score, 1e-12);
    }
  }
}

TEST(Resolve, ClosedIdsAreNeverReturned) {
  std::mt19937_64 rng(7);
  DialogueHistory h = RandomHistory(rng, 6);
  ASSERT_TRUE(h.Remove("03"));
  ASSERT_TRUE(h.Remove("06"));
  EXPECT_FALSE(h.Remove("06"));
  for (int trial = 0; trial < 200; ++trial) {
    const auto r = ResolveReference(TextFrame(), h, RandomVector(rng), ResolverConfig{});
    if (r.ok()) {
      EXPECT_NE(*r.id, "03");
      EXPECT_NE(*r.id, "06");
    }
  }
  EXPECT_FALSE(ResolveReference(GestureFrame("03"), h, {}, ResolverConfig{}).ok());
}

TEST(Resolve, MonthExpressionFindsDayCrimeVisualization) {
  const auto& r = Fixture();
  const auto& x = r.extractor();
  const std::vector<SlotFiller> referent_fillers = {
      x.MakeFiller("DAY", "day", {"day"}), x.MakeFiller("CRIME_TYPE", "theft", {"theft"})};
  DialogueHistory h;
  h.Add(Spec("08-3", x.Vectorize(referent_fillers, VectorMode::kSoft)));
  const std::vector<SlotFiller> expr_fillers = {x.MakeFiller("MONTH", "months", {"months"})};
  const SemanticVector expr = x.Vectorize(expr_fillers, VectorMode::kSoft);
  const auto res = ResolveReference(TextFrame(), h, expr, ResolverConfig{});
  ASSERT_TRUE(res.ok());
  EXPECT_EQ(*res.id, "08-3");
  ASSERT_EQ(res.candidates.size(), 1u);
  // Same number by hand: cosine of the two soft vectors, recency weight 1.
  EXPECT_NEAR(res.score, Cosine(expr.values, h.AtRank(1).semantic_vector.values), 1e-12);
  EXPECT_GT(res.score, 0.2);
  // Hard one-hot vectors share no dimension.
  DialogueHistory hard;
  hard.Add(Spec("08-3", x.Vectorize(referent_fillers, VectorMode::kHard)));
  EXPECT_FALSE(ResolveReference(TextFrame(), hard, x.Vectorize(expr_fillers, VectorMode::kHard),
                                ResolverConfig{})
                   .ok());
}

TEST(History, RanksAndIds) {
  DialogueHistory h;
  h.Add(Spec("01", {}));
  h.Add(Spec("02", {}));
  EXPECT_EQ(h.AtRank(1).id, "02");
  EXPECT_EQ(h.RankOf("01"), 2u);
  EXPECT_THROW(h.Add(Spec("01", {})), IntegrityError);
  DialogueState s;
  EXPECT_EQ(s.AllocateId(), "01");
  EXPECT_EQ(s.AllocateId(), "02");
  EXPECT_EQ(FormatSpecId(12), "12");
}

}  // namespace
}  // namespace vizref
