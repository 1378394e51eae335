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

#include "vizref/session.h"

#include <cstdio>
#include <fstream>

#include "vizref/errors.h"

namespace vizref {

SessionConfig SessionConfig::FromJson(const Json& json) {
  SessionConfig c;
  if (json.is_null()) return c;
  if (!json.is_object()) throw ValidationError("session config must be an object");
  try {
    if (json.contains("window")) {
      const Json& w = json.at("window");
      c.window = w.is_number_unsigned() ? Window::Of(w.get<std::size_t>())
                                        : Window::Parse(w.get<std::string>());
    }
    if (json.contains("cutoff")) c.cutoff = json.at("cutoff").get<double>();
    if (json.contains("vector_mode")) {
      c.mode = ParseVectorMode(json.at("vector_mode").get<std::string>());
    }
    if (json.contains("decay")) c.decay = json.at("decay").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("bad session config: ") + e.what());
  } catch (const ArgumentError& e) {
    throw ValidationError(e.what());
  }
  c.Validate();
  return c;
}

void SessionConfig::Validate() const {
  if (!(cutoff >= 0.0 && cutoff <= 1.0)) throw ValidationError("cutoff must be in [0, 1]");
  try {
    ParseRecencySchedule(decay);
  } catch (const ArgumentError& e) {
    throw ValidationError(e.what());
  }
}

EngineConfig SessionConfig::ToEngineConfig() const {
  EngineConfig e;
  e.resolver.window = window;
  e.resolver.cutoff = cutoff;
  e.resolver.schedule = ParseRecencySchedule(decay);
  e.mode = mode;
  return e;
}

std::string_view MessageKindName(MessageKind kind) {
  switch (kind) {
    case MessageKind::kUtterance: return "utterance";
    case MessageKind::kGesture: return "gesture";
    case MessageKind::kScreenUpdate: return "screen_update";
    case MessageKind::kAgentResponse: return "agent_response";
    case MessageKind::kError: return "error";
  }
  return "error";
}

Json ProtocolMessage::ToJson() const {
  Json j;
  j["kind"] = MessageKindName(kind);
  j["session"] = session;
  j["turn"] = turn;
  j["payload"] = payload;
  return j;
}

struct SessionManager::Session {
  Session(std::string id, SessionConfig config, const SlotExtractor& extractor,
          const CrimeTable* table)
      : id(std::move(id)), config(config), engine(extractor, table, config.ToEngineConfig()) {}

  ProtocolMessage Screen() const {
    return {MessageKind::kScreenUpdate, id, engine.state().turn,
            ScreenPayload(engine.state().history)};
  }
  void Publish(const ProtocolMessage& message) {
    for (const auto& [handle, subscriber] : subscribers) subscriber(message);
  }

  std::string id;
  SessionConfig config;
  mutable std::mutex mutex;
  DialogueEngine engine;
  std::vector<std::string> transcript;
  std::map<std::size_t, Subscriber> subscribers;
  std::size_t next_handle = 1;
};

SessionManager::SessionManager(const SlotExtractor& extractor, const CrfModel& model,
                               const CrimeTable* table,
                               std::optional<std::filesystem::path> transcript_dir)
    : extractor_(&extractor),
      model_(&model),
      table_(table),
      transcript_dir_(std::move(transcript_dir)) {
  if (transcript_dir_) std::filesystem::create_directories(*transcript_dir_);
}

SessionManager::~SessionManager() = default;

std::shared_ptr<SessionManager::Session> SessionManager::Find(std::string_view id) const {
  std::shared_lock lock(sessions_mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw NotFoundError("unknown session " + std::string(id));
  return it->second;
}

bool SessionManager::HasSession(std::string_view session) const {
  std::shared_lock lock(sessions_mutex_);
  return sessions_.find(session) != sessions_.end();
}

std::string SessionManager::CreateSession(const SessionConfig& config) {
  config.Validate();
  std::unique_lock lock(sessions_mutex_);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "session-%04zu", next_session_++);
  auto session = std::make_shared<Session>(buf, config, *extractor_, table_);
  sessions_.emplace(session->id, session);
  return session->id;
}

TurnReply SessionManager::PostTurn(std::string_view id, std::string_view utterance,
                                   const std::optional<std::string>& gesture) {
  auto session = Find(id);
  Utterance prepared = PrepareUtterance(utterance);
  if (prepared.tokens.empty()) throw ValidationError("utterance must not be empty");

  std::lock_guard lock(session->mutex);
  if (gesture && !session->engine.state().history.Contains(*gesture)) {
    throw ValidationError("gesture target " + *gesture + " is not on screen");
  }
  TurnInput input;
  input.utterance = std::string(utterance);
  input.tags = Decode(*model_, prepared.tokens);
  input.tokens = std::move(prepared.tokens);
  input.gesture = gesture;
  const TurnRecord& record = session->engine.ProcessTurn(input);

  Json payload;
  payload["response"] = AgentResponseName(record.agent.response);
  payload["message"] = record.agent.message;
  payload["created_id"] = record.created_id ? Json(*record.created_id) : Json(nullptr);
  payload["user_frame"] = FrameToJson(record.user);
  payload["agent_frame"] = FrameToJson(record.agent);
  TurnReply reply;
  reply.agent_response = {MessageKind::kAgentResponse, session->id, record.turn,
                          std::move(payload)};
  reply.screen_update = session->Screen();

  std::string line = Serialize(TurnRecordToJson(record));
  if (transcript_dir_) {
    std::ofstream out(*transcript_dir_ / (session->id + ".jsonl"), std::ios::app);
    out << line << '\n';
  }
  session->transcript.push_back(std::move(line));
  session->Publish(reply.agent_response);
  session->Publish(reply.screen_update);
  return reply;
}

ProtocolMessage SessionManager::GetScreen(std::string_view id) const {
  auto session = Find(id);
  std::lock_guard lock(session->mutex);
  return session->Screen();
}

std::vector<std::string> SessionManager::Transcript(std::string_view id) const {
  auto session = Find(id);
  std::lock_guard lock(session->mutex);
  return session->transcript;
}

std::size_t SessionManager::Subscribe(std::string_view id, Subscriber subscriber) {
  auto session = Find(id);
  std::lock_guard lock(session->mutex);
  subscriber(session->Screen());
  const std::size_t handle = session->next_handle++;
  session->subscribers.emplace(handle, std::move(subscriber));
  return handle;
}

void SessionManager::Unsubscribe(std::string_view id, std::size_t handle) {
  std::shared_ptr<Session> session;
  try {
    session = Find(id);
  } catch (const NotFoundError&) {
    return;
  }
  std::lock_guard lock(session->mutex);
  session->subscribers.erase(handle);
}

Json SessionManager::ReplayTranscript(const SessionConfig& config,
                                      std::span<const std::string> lines) const {
  DialogueEngine engine(*extractor_, table_, config.ToEngineConfig());
  for (const std::string& line : lines) {
    const Json record = Json::parse(line);
    Utterance prepared = PrepareUtterance(record.at("utterance").get<std::string>());
    TurnInput input;
    input.utterance = record.at("utterance").get<std::string>();
    input.tags = Decode(*model_, prepared.tokens);
    input.tokens = std::move(prepared.tokens);
    const Json& gesture = record.at("user").at("gesture_target");
    if (!gesture.is_null()) input.gesture = gesture.get<std::string>();
    engine.ProcessTurn(input);
  }
  return ScreenPayload(engine.state().history);
}

}  // namespace vizref
