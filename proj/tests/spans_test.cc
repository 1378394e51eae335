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


#include <vector>

#include <gtest/gtest.h>

#include "vizref/errors.h"
#include "vizref/spans.h"

namespace vizref {
namespace {

using enum Tag;

TEST(ExtractSpans, ReadsIob2) {
  const std::vector<Tag> tags = {kOutside, kBegin, kInside, kOutside, kBegin, kBegin};
  const std::vector<TokenSpan> expected = {{1, 3}, {4, 5}, {5, 6}};
  EXPECT_EQ(ExtractSpans(tags), expected);
  // Stray I-REF opens a span.
  const std::vector<Tag> stray = {kOutside, kInside, kInside};
  EXPECT_EQ(ExtractSpans(stray), (std::vector<TokenSpan>{{1, 3}}));
}

TEST(SpanF1, IdenticalIsOne) {
  const std::vector<std::vector<Tag>> gold = {{kOutside, kBegin, kInside}, {kBegin}};
  const auto s = SpanF1(gold, gold);
  EXPECT_DOUBLE_EQ(s.f1, 1.0);
  EXPECT_EQ(s.true_positives, 2u);
}

TEST(SpanF1, AllOutsidePredictionHasZeroRecall) {
  const std::vector<std::vector<Tag>> gold = {{kOutside, kBegin, kInside}};
  const std::vector<std::vector<Tag>> pred = {{kOutside, kOutside, kOutside}};
  const auto s = SpanF1(gold, pred);
  EXPECT_EQ(s.recall, 0.0);
  EXPECT_EQ(s.f1, 0.0);
}

TEST(SpanF1, PartialOverlapIsAMiss) {
  // gold covers tokens 9..10, prediction only token 9
  std::vector<Tag> gold(12, kOutside), pred(12, kOutside);
  gold[9] = kBegin;
  gold[10] = kInside;
  pred[9] = kBegin;
  const auto s = SpanF1(std::vector<std::vector<Tag>>{gold}, std::vector<std::vector<Tag>>{pred});
  EXPECT_EQ(s.true_positives, 0u);
  EXPECT_EQ(s.false_positives, 1u);
  EXPECT_EQ(s.false_negatives, 1u);
}

TEST(SpanF1, MicroAverage) {
  const std::vector<std::vector<Tag>> gold = {{kBegin, kOutside, kBegin}, {kBegin, kInside}};
  const std::vector<std::vector<Tag>> pred = {{kBegin, kOutside, kOutside}, {kBegin, kOutside}};
  const auto s = SpanF1(gold, pred);
  // tp 1 (first), fp 1 ({0,1} in the second), fn 2
  EXPECT_EQ(s.true_positives, 1u);
  EXPECT_EQ(s.false_positives, 1u);
  EXPECT_EQ(s.false_negatives, 2u);
  EXPECT_DOUBLE_EQ(s.precision, 0.5);
  EXPECT_DOUBLE_EQ(s.recall, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(s.f1, 0.4);
  EXPECT_DOUBLE_EQ(TokenAccuracy(gold, pred), 3.0 / 5.0);
}

TEST(SpanF1, LengthMismatchThrows) {
  const std::vector<std::vector<Tag>> a = {{kBegin}};
  const std::vector<std::vector<Tag>> b = {{kBegin, kOutside}};
  EXPECT_THROW(SpanF1(a, b), ArgumentError);
  EXPECT_THROW(SpanF1(a, std::vector<std::vector<Tag>>{}), ArgumentError);
}

}  // namespace
}  // namespace vizref
