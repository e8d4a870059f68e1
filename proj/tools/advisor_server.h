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

#ifndef AVALON_TOOLS_ADVISOR_SERVER_H_
#define AVALON_TOOLS_ADVISOR_SERVER_H_

#include <iosfwd>
#include <memory>
#include <string>

#include "avalon/advisor.h"

namespace avalon::tools {

struct HttpReply {
  int status = 200;
  std::string body;
};

// HTTP front end for an Advisor. Route handling lives in Handle() so it can
// be exercised without sockets; Listen()/Start() put it on the network.
class AdvisorServer {
 public:
  explicit AdvisorServer(Advisor advisor, std::ostream* log = nullptr);
  ~AdvisorServer();
  AdvisorServer(const AdvisorServer&) = delete;
  AdvisorServer& operator=(const AdvisorServer&) = delete;

  HttpReply Handle(const std::string& method, const std::string& path,
                   const std::string& body) const;

  // Blocks until Stop(). Throws Error(kIo) if the address cannot be bound.
  void Listen(const std::string& host, int port);
  // Binds an ephemeral port, serves on a background thread, returns the port.
  int StartInBackground(const std::string& host = "127.0.0.1");
  void Stop();

 private:
  struct Impl;
  Advisor advisor_;
  std::ostream* log_;
  std::unique_ptr<Impl> impl_;
};

}  // namespace avalon::tools

#endif  // AVALON_TOOLS_ADVISOR_SERVER_H_
