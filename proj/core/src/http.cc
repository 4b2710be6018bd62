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

#include "fedround/http.h"

#include <atomic>
#include <condition_variable>
#include <mutex>
#include <thread>

#include <httplib.h>
#include <spdlog/spdlog.h>

#include "fedround/errors.h"
#include "fedround/wire.h"

namespace fedround {
namespace {

constexpr const char* kJson = "application/json";
constexpr const char* kClientHeader = "X-Client-Id";

void reply(httplib::Response& res, int status, const nlohmann::json& body) {
  res.status = status;
  res.set_content(body.dump(), kJson);
}

}  // namespace

struct HttpRoundServer::Impl {
  RoundServer& rounds;
  HttpServerOptions options;
  httplib::Server server;
  std::thread listener;
  std::thread watchdog;
  std::mutex mu;
  std::condition_variable cv;
  bool stopping = false;
  int port = -1;

  Impl(RoundServer& r, HttpServerOptions o) : rounds(r), options(std::move(o)) {
    // httplib's default adds SO_REUSEPORT, which lets a second server share a busy port.
    server.set_socket_options([](socket_t sock) {
      int yes = 1;
      setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
    });
    auto touch = [this](const httplib::Request& req) {
      if (req.has_header(kClientHeader)) rounds.touch(req.get_header_value(kClientHeader));
    };
    server.Get("/round", [this, touch](const httplib::Request& req, httplib::Response& res) {
      touch(req);
      reply(res, 200, wire::round_body(rounds.get_round()));
    });
    server.Get("/weight", [this, touch](const httplib::Request& req, httplib::Response& res) {
      touch(req);
      reply(res, 200, wire::weights_body(rounds.get_weights()));
    });
    server.Put("/weight", [this](const httplib::Request& req, httplib::Response& res) {
      ClientUpdate update;
      try {
        update = wire::parse_put_body(nlohmann::json::parse(req.body),
                                      rounds.config().model_spec);
      } catch (const std::exception& e) {
        reply(res, 400, {{"error", e.what()}});
        return;
      }
      const auto result = rounds.put_weights(update);
      if (result.aggregated) {
        spdlog::info("round {} aggregated; now at round {}", update.round, update.round + 1);
      } else if (!result.accepted) {
        spdlog::info("rejected update from {} for round {}: {}", update.client_id, update.round,
                     to_string(*result.reason));
      }
      reply(res, result.accepted ? 200 : 409, wire::put_result_body(result));
    });
  }

  void watch() {
    std::unique_lock lock(mu);
    while (!cv.wait_for(lock, options.watchdog_interval, [this] { return stopping; })) {
      const auto silent = rounds.silent_clients(options.watchdog_timeout);
      if (silent.empty()) continue;
      std::string joined;
      for (const auto& id : silent) joined += (joined.empty() ? "" : ", ") + id;
      spdlog::warn("watchdog: round {} still waiting on silent clients: {}", rounds.get_round(),
                   joined);
      if (options.on_silent) options.on_silent(silent);
    }
  }
};

HttpRoundServer::HttpRoundServer(RoundServer& rounds, HttpServerOptions options)
    : impl_(std::make_unique<Impl>(rounds, std::move(options))) {}

HttpRoundServer::~HttpRoundServer() { stop(); }

int HttpRoundServer::start() {
  auto& im = *impl_;
  im.port = im.options.port == 0 ? im.server.bind_to_any_port(im.options.host)
                                 : (im.server.bind_to_port(im.options.host, im.options.port)
                                        ? im.options.port
                                        : -1);
  if (im.port < 0) {
    throw TransportError("cannot bind " + im.options.host + ":" + std::to_string(im.options.port));
  }
  im.listener = std::thread([&im] { im.server.listen_after_bind(); });
  im.server.wait_until_ready();
  if (im.options.watchdog_timeout.count() > 0) im.watchdog = std::thread([&im] { im.watch(); });
  return im.port;
}

void HttpRoundServer::stop() {
  if (!impl_) return;
  auto& im = *impl_;
  {
    std::lock_guard lock(im.mu);
    im.stopping = true;
  }
  im.cv.notify_all();
  if (im.watchdog.joinable()) im.watchdog.join();
  im.server.stop();
  if (im.listener.joinable()) im.listener.join();
}

int HttpRoundServer::port() const { return impl_->port; }

struct HttpEndpoint::Impl {
  httplib::Client client;
  std::string client_id;
  ModelSpec spec;

  Impl(const std::string& url, std::string id, ModelSpec s, std::chrono::milliseconds timeout)
      : client(url), client_id(std::move(id)), spec(std::move(s)) {
    if (!client.is_valid()) throw ParameterError("invalid server url '" + url + "'");
    client.set_keep_alive(true);
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);
    client.set_default_headers({{kClientHeader, client_id}});
  }

  static nlohmann::json body_of(const httplib::Result& res, const char* what,
                                std::initializer_list<int> ok) {
    if (!res) throw TransportError(std::string(what) + ": " + httplib::to_string(res.error()));
    if (res->status >= 500) {
      throw TransportError(std::string(what) + ": server error " + std::to_string(res->status));
    }
    if (std::find(ok.begin(), ok.end(), res->status) == ok.end()) {
      throw FormatError(std::string(what) + ": unexpected status " + std::to_string(res->status) +
                        ": " + res->body);
    }
    try {
      return nlohmann::json::parse(res->body);
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(std::string(what) + ": " + e.what());
    }
  }
};

HttpEndpoint::HttpEndpoint(const std::string& base_url, std::string client_id, ModelSpec spec,
                           std::chrono::milliseconds timeout)
    : impl_(std::make_unique<Impl>(base_url, std::move(client_id), std::move(spec), timeout)) {}

HttpEndpoint::~HttpEndpoint() = default;

std::uint64_t HttpEndpoint::get_round() {
  auto j = Impl::body_of(impl_->client.Get("/round"), "GET /round", {200});
  try {
    return j.at("round").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("GET /round: ") + e.what());
  }
}

WeightsSnapshot HttpEndpoint::get_weights() {
  return wire::parse_weights_body(Impl::body_of(impl_->client.Get("/weight"), "GET /weight", {200}),
                                  impl_->spec);
}

PutResult HttpEndpoint::put_weights(const ClientUpdate& update) {
  const std::string body = wire::put_body(update).dump();
  return wire::parse_put_result_body(
      Impl::body_of(impl_->client.Put("/weight", body, kJson), "PUT /weight", {200, 409}));
}

}  // namespace fedround
