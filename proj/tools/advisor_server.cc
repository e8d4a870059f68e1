// Copyright 2026 The Avalon Assassin Authors
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

#include "advisor_server.h"

#include <chrono>
#include <mutex>
#include <ostream>
#include <thread>

#include "avalon/error.h"
#include "avalon/game_io.h"
#include "httplib.h"
#include "json.hpp"

namespace avalon::tools {

namespace {

using Json = nlohmann::ordered_json;

HttpReply ErrorReply(int status, std::string_view code,
                     const std::string& message, const std::string& field = "",
                     const std::vector<Violation>* violations = nullptr) {
  Json err;
  err["code"] = std::string(code);
  err["message"] = message;
  if (!field.empty()) err["field"] = field;
  if (violations != nullptr) {
    err["violations"] = Json::parse(ViolationsToJson(*violations));
  }
  Json j;
  j["api_version"] = std::string(kApiVersion);
  j["error"] = err;
  return {status, j.dump()};
}

// Parses a view body; returns a reply on failure.
std::optional<HttpReply> ParseView(const std::string& body,
                                   AssassinView& view) {
  nlohmann::json parsed;
  try {
    parsed = nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception& e) {
    return ErrorReply(400, "MalformedJson", e.what());
  }
  try {
    view = ViewFromJson(body);
  } catch (const SchemaError& e) {
    return ErrorReply(422, "SchemaError", e.what(), e.field());
  }
  return std::nullopt;
}

}  // namespace

struct AdvisorServer::Impl {
  httplib::Server server;
  std::thread thread;
  std::mutex log_mu;
};

AdvisorServer::AdvisorServer(Advisor advisor, std::ostream* log)
    : advisor_(std::move(advisor)), log_(log), impl_(std::make_unique<Impl>()) {
  auto route = [this](const httplib::Request& req, httplib::Response& res) {
    const auto start = std::chrono::steady_clock::now();
    const HttpReply reply = Handle(req.method, req.path, req.body);
    res.status = reply.status;
    res.set_content(reply.body, "application/json; charset=utf-8");
    if (log_ != nullptr) {
      const double ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - start)
                            .count();
      Json line;
      line["method"] = req.method;
      line["path"] = req.path;
      line["status"] = reply.status;
      line["bytes_in"] = req.body.size();
      line["duration_ms"] = ms;
      std::lock_guard<std::mutex> lock(impl_->log_mu);
      *log_ << line.dump() << std::endl;
    }
  };
  impl_->server.Get(".*", route);
  impl_->server.Post(".*", route);
  impl_->server.Put(".*", route);
  impl_->server.Delete(".*", route);
}

AdvisorServer::~AdvisorServer() { Stop(); }

HttpReply AdvisorServer::Handle(const std::string& method,
                                const std::string& path,
                                const std::string& body) const {
  try {
    if (path == "/api/v1/health") {
      if (method != "GET") return ErrorReply(405, "MethodNotAllowed", "use GET");
      Json j;
      j["api_version"] = std::string(kApiVersion);
      j["status"] = "ok";
      j["model"] = Json::parse(advisor_.MetaJson());
      return {200, j.dump()};
    }
    if (path == "/api/v1/advise" || path == "/api/v1/validate") {
      if (method != "POST") {
        return ErrorReply(405, "MethodNotAllowed", "use POST");
      }
      AssassinView view;
      if (auto failure = ParseView(body, view)) return *failure;
      const std::vector<Violation> violations = ValidateView(view);
      if (path == "/api/v1/validate") {
        Json j;
        j["api_version"] = std::string(kApiVersion);
        j["valid"] = violations.empty();
        j["violations"] = Json::parse(ViolationsToJson(violations));
        return {200, j.dump()};
      }
      if (!violations.empty()) {
        return ErrorReply(422, "InvalidView", violations.front().message,
                          violations.front().location, &violations);
      }
      return {200, AdviceToJson(advisor_.Advise(view))};
    }
    return ErrorReply(404, "NotFound", "no route for " + path);
  } catch (const Error& e) {
    const bool semantic = e.kind() == ErrorKind::kInvalidGame ||
                          e.kind() == ErrorKind::kFeatureSchemaMismatch ||
                          e.kind() == ErrorKind::kSchema;
    return ErrorReply(semantic ? 422 : 500, ErrorKindName(e.kind()), e.what());
  } catch (const std::exception& e) {
    return ErrorReply(500, "Internal", e.what());
  }
}

void AdvisorServer::Listen(const std::string& host, int port) {
  if (!impl_->server.bind_to_port(host, port)) {
    throw Error(ErrorKind::kIo, "cannot bind " + host + ":" +
                                    std::to_string(port));
  }
  impl_->server.listen_after_bind();
}

int AdvisorServer::StartInBackground(const std::string& host) {
  const int port = impl_->server.bind_to_any_port(host);
  if (port < 0) throw Error(ErrorKind::kIo, "cannot bind " + host);
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return port;
}

void AdvisorServer::Stop() {
  if (!impl_) return;
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace avalon::tools
