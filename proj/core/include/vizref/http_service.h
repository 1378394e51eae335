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

#ifndef VIZREF_HTTP_SERVICE_H_
#define VIZREF_HTTP_SERVICE_H_

#include <memory>
#include <string>

#include "vizref/session.h"

namespace vizref {

// HTTP binding of SessionManager.
//
//   POST /sessions                   body: optional session config
//        201 screen_update message for the new session
//   POST /sessions/{id}/turns        body: {"utterance": str, "gesture": id|null}
//        200 {"agent_response": message, "screen_update": message}
//   GET  /sessions/{id}/screen       200 screen_update message
//   GET  /sessions/{id}/transcript   200 application/x-ndjson, one turn per line
//   GET  /sessions/{id}/events       text/event-stream; "event: <kind>" and
//                                    "data: <message>" per push
//
// Errors carry an error message: 400 for bad input, 404 for unknown ids.
class HttpService {
 public:
  explicit HttpService(SessionManager& sessions);
  ~HttpService();
  HttpService(const HttpService&) = delete;
  HttpService& operator=(const HttpService&) = delete;

  // Binds and returns the port; port 0 picks a free one.
  int Bind(const std::string& host, int port);
  // Blocks until Stop().
  void Listen();
  void Stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace vizref

#endif  // VIZREF_HTTP_SERVICE_H_
