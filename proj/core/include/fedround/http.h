/**
 * Copyright 2026 The fedround Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef FEDROUND_HTTP_H_
#define FEDROUND_HTTP_H_

#include <chrono>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "fedround/client.h"
#include "fedround/protocol.h"

namespace fedround {

struct HttpServerOptions {
  std::string host = "127.0.0.1";
  int port = 0;  // 0 picks a free port
  // Silent-client watchdog; zero disables it.
  std::chrono::milliseconds watchdog_timeout{0};
  std::chrono::milliseconds watchdog_interval{1000};
  // Called from the watchdog thread with the silent client ids.
  std::function<void(const std::vector<std::string>&)> on_silent;
};

// Serves a RoundServer over HTTP/JSON:
//   GET /round, GET /weight, PUT /weight
// A request carrying an X-Client-Id header refreshes that client's liveness.
// Malformed bodies get 400; rejected updates get 409 with the reason.
class HttpRoundServer {
 public:
  HttpRoundServer(RoundServer& rounds, HttpServerOptions options);
  ~HttpRoundServer();
  HttpRoundServer(const HttpRoundServer&) = delete;
  HttpRoundServer& operator=(const HttpRoundServer&) = delete;

  // Binds and starts serving on a background thread; returns the bound port.
  // Throws TransportError if the address cannot be bound.
  int start();
  void stop();
  int port() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// ServerEndpoint over HTTP. `base_url` is e.g. "http://127.0.0.1:8080".
class HttpEndpoint : public ServerEndpoint {
 public:
  HttpEndpoint(const std::string& base_url, std::string client_id, ModelSpec spec,
               std::chrono::milliseconds timeout = std::chrono::seconds(30));
  ~HttpEndpoint() override;

  std::uint64_t get_round() override;
  WeightsSnapshot get_weights() override;
  // The response body carries no round-closing flag, so `aggregated` stays false.
  PutResult put_weights(const ClientUpdate& update) override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace fedround

#endif  // FEDROUND_HTTP_H_
