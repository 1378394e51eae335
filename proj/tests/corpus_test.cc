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


#include <algorithm>
#include <cctype>
#include <filesystem>
#include <map>
#include <set>
#include <string>

#include <gtest/gtest.h>

#include "test_support.h"
#include "vizref/corpus.h"
#include "vizref/errors.h"
#include "vizref/generator.h"

namespace vizref {
namespace {

using testing::Fixture;
using testing::FixtureCorpus;

std::vector<CorpusRecord> FirstSession() {
  const auto& corpus = FixtureCorpus();
  const auto ranges = SessionRanges(corpus);
  return {corpus.begin() + ranges[0].first, corpus.begin() + ranges[0].second};
}

TEST(Corpus, SizeAndShape) {
  const auto& corpus = FixtureCorpus();
  EXPECT_GT(corpus.size(), 2500u);
  EXPECT_LT(corpus.size(), 3600u);
  EXPECT_EQ(SessionRanges(corpus).size(), 16u);
  EXPECT_NO_THROW(ValidateCorpus(corpus));
}

TEST(Corpus, GeneratorIsDeterministic) {
  GeneratorConfig config;
  config.sessions = 3;
  const auto a = GenerateSyntheticCorpus(Fixture().ontology(), config);
  const auto b = GenerateSyntheticCorpus(Fixture().ontology(), config);
  EXPECT_EQ(a, b);
  config.seed = 8;
  EXPECT_NE(a, GenerateSyntheticCorpus(Fixture().ontology(), config));
}

TEST(Corpus, TagsAreIob2AndParallel) {
  for (const auto& r : FixtureCorpus()) {
    ASSERT_EQ(r.tokens.size(), r.tags.size());
    EXPECT_TRUE(IsValidIob2(r.tags));
    for (const auto& f : r.fillers) EXPECT_LE(f.span.end, r.tokens.size());
  }
}

TEST(Corpus, WordsAreInLexicon) {
  std::set<std::string> missing;
  for (const auto& r : FixtureCorpus()) {
    for (const auto& t : r.tokens) {
      const bool wordlike = std::any_of(t.surface.begin(), t.surface.end(),
                                        [](unsigned char c) { return std::isalpha(c); });
      if (wordlike && !Fixture().lexicon().Contains(t.surface)) missing.insert(t.surface);
    }
  }
  EXPECT_TRUE(missing.empty()) << *missing.begin();
}

TEST(Corpus, CarStructure) {
  std::map<std::pair<std::string, std::size_t>, int> requests;
  for (const auto& r : FixtureCorpus()) {
    if (r.segment == Segment::kRequest) ++requests[{r.session, r.car}];
    if (r.segment == Segment::kRequest) EXPECT_TRUE(r.intent.has_value());
    if (r.intent == std::string(kModifyVis)) EXPECT_TRUE(r.referent.has_value());
  }
  for (const auto& [key, n] : requests) EXPECT_EQ(n, 1) << key.first << " car " << key.second;
}

TEST(Corpus, JsonRoundTrip) {
  const auto session = FirstSession();
  const std::string text = FormatCorpus(session);
  EXPECT_EQ(ParseCorpus(text), session);
  EXPECT_EQ(FormatCorpus(ParseCorpus(text)), text);

  const auto path = std::filesystem::temp_directory_path() / "vizref_corpus_test.jsonl";
  SaveCorpus(session, path);
  EXPECT_EQ(LoadCorpus(path), session);
  std::filesystem::remove(path);
}

TEST(Corpus, SchemaErrors) {
  const auto session = FirstSession();
  Json j = RecordToJson(session[0]);
  Json missing = j;
  missing.erase("tokens");
  EXPECT_THROW(RecordFromJson(missing), SchemaError);
  Json bad_tag = j;
  bad_tag["tags"][0] = "X";
  EXPECT_THROW(RecordFromJson(bad_tag), SchemaError);
  Json bad_schema = j;
  bad_schema["schema"] = "other/9";
  EXPECT_THROW(RecordFromJson(bad_schema), SchemaError);
  EXPECT_THROW(ParseCorpus("{not json}\n"), FormatError);
}

TEST(Corpus, ParseErrorReportsLine) {
  const auto session = FirstSession();
  const std::string text = Serialize(RecordToJson(session[0])) + "\n{oops\n";
  try {
    ParseCorpus(text);
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_EQ(e.line(), 2);
  }
}

TEST(Corpus, IntegrityErrors) {
  auto session = FirstSession();
  {
    auto broken = session;
    broken[0].tags.push_back(Tag::kOutside);
    EXPECT_THROW(ValidateCorpus(broken), IntegrityError);
  }
  {
    auto broken = session;
    auto it = std::find_if(broken.begin(), broken.end(),
                           [](const CorpusRecord& r) { return r.referent.has_value(); });
    ASSERT_NE(it, broken.end());
    it->referent = "99";
    EXPECT_THROW(ValidateCorpus(broken), IntegrityError);
  }
  {
    auto broken = session;
    for (auto& r : broken) r.tags.assign(r.tokens.size(), Tag::kOutside);
    broken[0].tags[0] = Tag::kInside;
    EXPECT_THROW(ValidateCorpus(broken), IntegrityError);
  }
  {
    auto broken = session;
    std::swap(broken[1], broken[2]);
    EXPECT_THROW(ValidateCorpus(broken), IntegrityError);
  }
}

TEST(Corpus, TaggedUtterancesMirrorRecords) {
  const auto session = FirstSession();
  const auto tagged = ToTaggedUtterances(session);
  ASSERT_EQ(tagged.size(), session.size());
  for (std::size_t i = 0; i < session.size(); ++i) {
    EXPECT_EQ(tagged[i].tokens, session[i].tokens);
    EXPECT_EQ(tagged[i].tags, session[i].tags);
  }
}

}  // namespace
}  // namespace vizref
