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

#include "vizref/http_service.h"

#include <atomic>
#include <condition_variable>
#include <deque>

#include <httplib.h>

#include "vizref/errors.h"

namespace vizref {

namespace {

constexpr const char* kJson = "application/json";

void SendError(httplib::Response& res, int status, const std::string& session,
               const std::string& message) {
  ProtocolMessage m{MessageKind::kError, session, 0, Json{{"message", message}}};
  res.status = status;
  res.set_content(Serialize(m.ToJson()), kJson);
}

// Per-connection queue between the session's publisher and the stream.
struct EventQueue {
  std::mutex mutex;
  std::condition_variable ready;
  std::deque<std::string> events;
  bool closed = false;

  void Push(std::string event) {
    {
      std::lock_guard lock(mutex);
      events.push_back(std::move(event));
    }
    ready.notify_one();
  }
  void Close() {
    {
      std::lock_guard lock(mutex);
      closed = true;
    }
    ready.notify_all();
  }
};

std::string SseFrame(const ProtocolMessage& m) {
  return "event: " + std::string(MessageKindName(m.kind)) + "\ndata: " + Serialize(m.ToJson()) +
         "\n\n";
}

}  // namespace

struct HttpService::Impl {
  explicit Impl(SessionManager& s) : sessions(s) {}

  template <typename Fn>
  void Guard(const std::string& session, httplib::Response& res, Fn&& fn) {
    try {
      fn();
    } catch (const NotFoundError& e) {
      SendError(res, 404, session, e.what());
    } catch (const ValidationError& e) {
      SendError(res, 400, session, e.what());
    } catch (const Json::exception& e) {
      SendError(res, 400, session, std::string("malformed JSON: ") + e.what());
    } catch (const Error& e) {
      SendError(res, 400, session, e.what());
    }
  }

  void Routes() {
    server.Post("/sessions", [this](const httplib::Request& req, httplib::Response& res) {
      Guard("", res, [&] {
        const Json body = req.body.empty() ? Json(nullptr) : Json::parse(req.body);
        const std::string id = sessions.CreateSession(SessionConfig::FromJson(body));
        res.status = 201;
        res.set_content(Serialize(sessions.GetScreen(id).ToJson()), kJson);
      });
    });
    server.Post(R"(/sessions/([^/]+)/turns)",
                [this](const httplib::Request& req, httplib::Response& res) {
                  const std::string id = req.matches[1];
                  Guard(id, res, [&] {
                    const Json body = Json::parse(req.body);
                    if (!body.is_object() || !body.contains("utterance") ||
                        !body.at("utterance").is_string()) {
                      throw ValidationError("turn needs a string 'utterance'");
                    }
                    std::optional<std::string> gesture;
                    if (body.contains("gesture") && !body.at("gesture").is_null()) {
                      gesture = body.at("gesture").get<std::string>();
                    }
                    const TurnReply reply =
                        sessions.PostTurn(id, body.at("utterance").get<std::string>(), gesture);
                    Json out;
                    out["agent_response"] = reply.agent_response.ToJson();
                    out["screen_update"] = reply.screen_update.ToJson();
                    res.set_content(Serialize(out), kJson);
                  });
                });
    server.Get(R"(/sessions/([^/]+)/screen)",
               [this](const httplib::Request& req, httplib::Response& res) {
                 const std::string id = req.matches[1];
                 Guard(id, res, [&] {
                   res.set_content(Serialize(sessions.GetScreen(id).ToJson()), kJson);
                 });
               });
    server.Get(R"(/sessions/([^/]+)/transcript)",
               [this](const httplib::Request& req, httplib::Response& res) {
                 const std::string id = req.matches[1];
                 Guard(id, res, [&] {
                   std::string body;
                   for (const auto& line : sessions.Transcript(id)) body += line + "\n";
                   res.set_content(body, "application/x-ndjson");
                 });
               });
    server.Get(R"(/sessions/([^/]+)/events)",
               [this](const httplib::Request& req, httplib::Response& res) {
                 const std::string id = req.matches[1];
                 Guard(id, res, [&] {
                   auto queue = std::make_shared<EventQueue>();
                   const std::size_t handle = sessions.Subscribe(
                       id, [queue](const ProtocolMessage& m) { queue->Push(SseFrame(m)); });
                   {
                     std::lock_guard lock(streams_mutex);
                     streams.push_back(queue);
                   }
                   res.set_chunked_content_provider(
                       "text/event-stream",
                       [queue](size_t, httplib::DataSink& sink) {
                         std::unique_lock lock(queue->mutex);
                         queue->ready.wait(lock,
                                           [&] { return queue->closed || !queue->events.empty(); });
                         if (queue->closed) {
                           sink.done();
                           return false;
                         }
                         std::string event = std::move(queue->events.front());
                         queue->events.pop_front();
                         lock.unlock();
                         return sink.write(event.data(), event.size());
                       },
                       [this, id, handle, queue](bool) {
                         sessions.Unsubscribe(id, handle);
                         queue->Close();
                       });
                 });
               });
  }

  void CloseStreams() {
    std::lock_guard lock(streams_mutex);
    for (auto& q : streams) q->Close();
    streams.clear();
  }

  SessionManager& sessions;
  httplib::Server server;
  std::mutex streams_mutex;
  std::vector<std::shared_ptr<EventQueue>> streams;
};

HttpService::HttpService(SessionManager& sessions) : impl_(std::make_unique<Impl>(sessions)) {
  impl_->Routes();
}

HttpService::~HttpService() { Stop(); }

int HttpService::Bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  if (!impl_->server.bind_to_port(host, port)) {
    throw ArgumentError("cannot bind " + host + ":" + std::to_string(port));
  }
  return port;
}

void HttpService::Listen() { impl_->server.listen_after_bind(); }

void HttpService::Stop() {
  impl_->CloseStreams();
  impl_->server.stop();
}

}  // namespace vizref
