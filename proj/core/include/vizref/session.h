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

#ifndef VIZREF_SESSION_H_
#define VIZREF_SESSION_H_

#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "vizref/crf.h"
#include "vizref/data_query.h"
#include "vizref/dialogue_manager.h"
#include "vizref/spec_io.h"

namespace vizref {

struct SessionConfig {
  Window window = Window::Unlimited();
  double cutoff = 0.2;
  VectorMode mode = VectorMode::kSoft;
  std::string decay = "linear";

  // Accepts {window: "0"|"1"|..|"inf", cutoff, vector_mode, decay}; every
  // key is optional. Throws ValidationError on bad values.
  static SessionConfig FromJson(const Json& json);
  void Validate() const;
  EngineConfig ToEngineConfig() const;
};

enum class MessageKind { kUtterance, kGesture, kScreenUpdate, kAgentResponse, kError };
std::string_view MessageKindName(MessageKind kind);

// Wire envelope: {kind, session, turn, payload}.
struct ProtocolMessage {
  MessageKind kind = MessageKind::kScreenUpdate;
  std::string session;
  std::size_t turn = 0;
  Json payload;

  Json ToJson() const;
};

struct TurnReply {
  ProtocolMessage agent_response;
  ProtocolMessage screen_update;
};

// Live sessions over a shared, read-only model. Each session runs its turns
// one at a time in submission order; distinct sessions proceed in parallel.
class SessionManager {
 public:
  using Subscriber = std::function<void(const ProtocolMessage&)>;

  SessionManager(const SlotExtractor& extractor, const CrfModel& model, const CrimeTable* table,
                 std::optional<std::filesystem::path> transcript_dir = std::nullopt);
  ~SessionManager();
  SessionManager(const SessionManager&) = delete;
  SessionManager& operator=(const SessionManager&) = delete;

  // Returns the new id; the empty screen_update is its first message.
  std::string CreateSession(const SessionConfig& config = {});
  TurnReply PostTurn(std::string_view session, std::string_view utterance,
                     const std::optional<std::string>& gesture = std::nullopt);
  ProtocolMessage GetScreen(std::string_view session) const;
  std::vector<std::string> Transcript(std::string_view session) const;
  bool HasSession(std::string_view session) const;

  // The subscriber first receives the current screen_update, then every
  // later message of the session in turn order. Returns a handle.
  std::size_t Subscribe(std::string_view session, Subscriber subscriber);
  void Unsubscribe(std::string_view session, std::size_t handle);

  // Re-runs transcript lines through a fresh engine and returns the final
  // screen payload.
  Json ReplayTranscript(const SessionConfig& config, std::span<const std::string> lines) const;

 private:
  struct Session;
  std::shared_ptr<Session> Find(std::string_view id) const;

  const SlotExtractor* extractor_;
  const CrfModel* model_;
  const CrimeTable* table_;
  std::optional<std::filesystem::path> transcript_dir_;
  mutable std::shared_mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Session>, std::less<>> sessions_;
  std::size_t next_session_ = 1;
};

}  // namespace vizref

#endif  // VIZREF_SESSION_H_
