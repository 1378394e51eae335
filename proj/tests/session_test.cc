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
#include <atomic>
#include <chrono>
#include <filesystem>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <gtest/gtest.h>
#include <httplib.h>

#include "test_support.h"
#include "vizref/errors.h"
#include "vizref/http_service.h"
#include "vizref/session.h"

namespace vizref {
namespace {

using testing::Fixture;
using testing::FixtureModel;

constexpr const char* kFirst = "can I see theft in the downtown area";
constexpr const char* kSecond = "can you show that graph by day of the week?";

class SessionTest : public ::testing::Test {
 protected:
  SessionManager manager{Fixture().extractor(), FixtureModel(), Fixture().table()};
};

bool HasEntity(const Json& spec, const std::string& slot, const Json& value) {
  for (const auto& e : spec.at("entities")) {
    if (e.at("slot") == slot && e.at("value") == value) return true;
  }
  return false;
}

void ExpectIntroductoryScreen(const Json& payload) {
  const auto& specs = payload.at("visualizations");
  ASSERT_EQ(specs.size(), 2u);
  EXPECT_EQ(specs[0].at("plot_type"), "bar");
  const Json& second = specs[1];
  EXPECT_EQ(second.at("plot_type"), "line");
  EXPECT_TRUE(HasEntity(second, "CRIME_TYPE", "theft"));
  EXPECT_TRUE(HasEntity(second, "NEIGHBORHOOD", "downtown"));
  EXPECT_TRUE(HasEntity(second, "DAY", nullptr));
  EXPECT_EQ(second.at("axes"), Json::array({"DAY"}));
  EXPECT_EQ(second.at("data").at("rows").size(), 7u);
}

TEST(SessionConfigTest, ParsesAndValidates) {
  const auto c = SessionConfig::FromJson(Json::parse(R"({"window":"1","cutoff":0.5})"));
  EXPECT_EQ(c.window, Window::Of(1));
  EXPECT_DOUBLE_EQ(c.cutoff, 0.5);
  EXPECT_EQ(SessionConfig::FromJson(Json::object()).window, Window::Unlimited());
  EXPECT_THROW(SessionConfig::FromJson(Json::parse(R"({"cutoff":1.5})")), ValidationError);
  EXPECT_THROW(SessionConfig::FromJson(Json::parse(R"({"window":"wide"})")), ValidationError);
  EXPECT_THROW(SessionConfig::FromJson(Json::parse(R"({"vector_mode":"fuzzy"})")),
               ValidationError);
  EXPECT_THROW(SessionConfig::FromJson(Json::parse("[1]")), ValidationError);
}

TEST_F(SessionTest, CreateStartsEmpty) {
  const std::string a = manager.CreateSession();
  const std::string b = manager.CreateSession();
  EXPECT_NE(a, b);
  EXPECT_TRUE(manager.HasSession(a));
  const Json screen = manager.GetScreen(a).ToJson();
  EXPECT_EQ(screen.at("kind"), "screen_update");
  EXPECT_EQ(screen.at("session"), a);
  EXPECT_TRUE(screen.at("payload").at("visualizations").empty());
  SessionConfig bad;
  bad.cutoff = 1.5;
  EXPECT_THROW(manager.CreateSession(bad), ValidationError);
}

TEST_F(SessionTest, RejectsBadTurns) {
  const std::string id = manager.CreateSession();
  EXPECT_THROW(manager.PostTurn("session-9999", kFirst), NotFoundError);
  EXPECT_THROW(manager.GetScreen("nope"), NotFoundError);
  EXPECT_THROW(manager.PostTurn(id, "   "), ValidationError);
  EXPECT_THROW(manager.PostTurn(id, kFirst, std::string("07")), ValidationError);
  EXPECT_TRUE(manager.Transcript(id).empty());
}

TEST_F(SessionTest, IntroductoryScenario) {
  const std::string id = manager.CreateSession();
  const TurnReply first = manager.PostTurn(id, kFirst);
  EXPECT_EQ(first.agent_response.payload.at("response"), "created");
  const TurnReply second = manager.PostTurn(id, kSecond);
  EXPECT_EQ(second.agent_response.turn, 2u);
  ExpectIntroductoryScreen(second.screen_update.payload);
  EXPECT_EQ(manager.Transcript(id).size(), 2u);
}

TEST_F(SessionTest, GestureSelectsTarget) {
  const std::string id = manager.CreateSession();
  manager.PostTurn(id, "show me burglaries by year");
  manager.PostTurn(id, "show me thefts by month");
  const TurnReply r = manager.PostTurn(id, "close this one", std::string("01"));
  EXPECT_EQ(r.agent_response.payload.at("agent_frame").at("referent_id"), "01");
  const auto& specs = r.screen_update.payload.at("visualizations");
  ASSERT_EQ(specs.size(), 1u);
  EXPECT_EQ(specs[0].at("id"), "02");
}

TEST_F(SessionTest, SubscribersSeeMessagesInOrder) {
  const std::string id = manager.CreateSession();
  std::vector<std::string> kinds;
  std::vector<std::size_t> turns;
  const auto h = manager.Subscribe(id, [&](const ProtocolMessage& m) {
    kinds.emplace_back(MessageKindName(m.kind));
    turns.push_back(m.turn);
  });
  manager.PostTurn(id, kFirst);
  manager.PostTurn(id, kSecond);
  manager.Unsubscribe(id, h);
  manager.PostTurn(id, "show me burglaries by year");
  const std::vector<std::string> expected = {"screen_update", "agent_response", "screen_update",
                                             "agent_response", "screen_update"};
  EXPECT_EQ(kinds, expected);
  EXPECT_EQ(turns, (std::vector<std::size_t>{0, 1, 1, 2, 2}));
}

TEST_F(SessionTest, TranscriptReplayReproducesScreen) {
  const std::string id = manager.CreateSession();
  for (const char* u : {kFirst, kSecond, "show me burglaries by year", "close that graph"}) {
    manager.PostTurn(id, u);
  }
  const auto lines = manager.Transcript(id);
  EXPECT_EQ(manager.ReplayTranscript({}, lines), manager.GetScreen(id).payload);
}

TEST_F(SessionTest, SessionsAreIndependentUnderConcurrency) {
  std::vector<std::string> ids;
  for (int i = 0; i < 4; ++i) ids.push_back(manager.CreateSession());
  std::vector<std::thread> workers;
  for (const auto& id : ids) {
    workers.emplace_back([&, id] {
      manager.PostTurn(id, kFirst);
      manager.PostTurn(id, kSecond);
    });
  }
  for (auto& w : workers) w.join();
  for (const auto& id : ids) ExpectIntroductoryScreen(manager.GetScreen(id).payload);
}

TEST(SessionFiles, TranscriptsAreWritten) {
  const auto dir = std::filesystem::temp_directory_path() / "vizref_session_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  {
    SessionManager manager(Fixture().extractor(), FixtureModel(), Fixture().table(), dir);
    const std::string id = manager.CreateSession();
    manager.PostTurn(id, kFirst);
    EXPECT_TRUE(std::filesystem::exists(dir / (id + ".jsonl")));
  }
  std::filesystem::remove_all(dir);
}

class HttpTest : public SessionTest {
 protected:
  void SetUp() override {
    port = service.Bind("127.0.0.1", 0);
    ASSERT_GT(port, 0);
    server = std::thread([this] { service.Listen(); });
  }
  void TearDown() override {
    service.Stop();
    server.join();
  }

  httplib::Client Client() {
    httplib::Client c("127.0.0.1", port);
    c.set_read_timeout(10, 0);
    return c;
  }

  HttpService service{manager};
  int port = 0;
  std::thread server;
};

std::string NewSession(httplib::Client& c) {
  auto res = c.Post("/sessions", "", "application/json");
  EXPECT_TRUE(res);
  EXPECT_EQ(res->status, 201);
  return Json::parse(res->body).at("session").get<std::string>();
}

std::string TurnBody(const std::string& utterance) {
  Json j;
  j["utterance"] = utterance;
  j["gesture"] = nullptr;
  return Serialize(j);
}

TEST_F(HttpTest, IntroductoryScenario) {
  auto c = Client();
  const std::string id = NewSession(c);
  auto r1 = c.Post("/sessions/" + id + "/turns", TurnBody(kFirst), "application/json");
  ASSERT_TRUE(r1);
  ASSERT_EQ(r1->status, 200);
  auto r2 = c.Post("/sessions/" + id + "/turns", TurnBody(kSecond), "application/json");
  ASSERT_TRUE(r2);
  ASSERT_EQ(r2->status, 200);
  const Json reply = Json::parse(r2->body);
  EXPECT_EQ(reply.at("agent_response").at("kind"), "agent_response");
  ExpectIntroductoryScreen(reply.at("screen_update").at("payload"));

  auto screen = c.Get("/sessions/" + id + "/screen");
  ASSERT_TRUE(screen);
  EXPECT_EQ(Json::parse(screen->body).at("payload"), reply.at("screen_update").at("payload"));

  auto transcript = c.Get("/sessions/" + id + "/transcript");
  ASSERT_TRUE(transcript);
  EXPECT_EQ(std::count(transcript->body.begin(), transcript->body.end(), '\n'), 2);
}

TEST_F(HttpTest, ErrorStatuses) {
  auto c = Client();
  auto missing = c.Get("/sessions/none/screen");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 404);
  EXPECT_EQ(Json::parse(missing->body).at("kind"), "error");
  const std::string id = NewSession(c);
  auto bad = c.Post("/sessions/" + id + "/turns", "{\"text\":1}", "application/json");
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->status, 400);
  auto junk = c.Post("/sessions/" + id + "/turns", "not json", "application/json");
  ASSERT_TRUE(junk);
  EXPECT_EQ(junk->status, 400);
  auto offscreen = c.Post("/sessions/" + id + "/turns",
                          R"({"utterance":"close this","gesture":"05"})", "application/json");
  ASSERT_TRUE(offscreen);
  EXPECT_EQ(offscreen->status, 400);
  auto config = c.Post("/sessions", R"({"cutoff":2})", "application/json");
  ASSERT_TRUE(config);
  EXPECT_EQ(config->status, 400);
}

TEST_F(HttpTest, EventStreamPushesScreenUpdates) {
  auto c = Client();
  const std::string id = NewSession(c);
  std::mutex mu;
  std::string received;
  std::atomic<bool> done{false};
  std::thread listener([&] {
    auto sse = Client();
    sse.Get("/sessions/" + id + "/events", [&](const char* data, size_t n) {
      std::lock_guard lock(mu);
      received.append(data, n);
      const auto events = std::count(received.begin(), received.end(), '\n');
      if (received.find("event: agent_response") != std::string::npos &&
          received.rfind("event: screen_update") > received.find("event: agent_response") &&
          events >= 9) {
        done = true;
        return false;
      }
      return true;
    });
  });
  for (int i = 0; i < 100; ++i) {
    {
      std::lock_guard lock(mu);
      if (received.find("event: screen_update") != std::string::npos) break;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
  }
  auto r = c.Post("/sessions/" + id + "/turns", TurnBody(kFirst), "application/json");
  ASSERT_TRUE(r);
  for (int i = 0; i < 250 && !done; ++i) std::this_thread::sleep_for(std::chrono::milliseconds(20));
  service.Stop();
  listener.join();
  EXPECT_TRUE(done);
  std::lock_guard lock(mu);
  EXPECT_EQ(received.find("event: screen_update"), 0u);
}

}  // namespace
}  // namespace vizref
