// Copyright 2026 The scarce-rl Authors.
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

#ifndef SCARCE_RL_SERVICE_ORACLE_SERVICE_H_
#define SCARCE_RL_SERVICE_ORACLE_SERVICE_H_

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "json.hpp"
#include "scarce_rl/core/budget.h"
#include "scarce_rl/environments/env_config.h"

namespace httplib {
class Server;
}

namespace scarce_rl {

struct ServiceConfig {
  // Environments a client may open sessions on, by id.
  std::map<std::string, EnvConfig> envs;
  std::chrono::seconds idle_timeout{3600};
  Budget budget;  // allowance of every new session
};

// env_a and env_b with the default budget and idle timeout.
ServiceConfig default_service_config();

// {"envs": {"<id>": "env_a" | "env_b" | "<path>" | {inline config}},
//  "idle_timeout_seconds": n}. Relative paths resolve against the config
// file's directory.
ServiceConfig service_config_from_json(const nlohmann::json& j,
                                       const std::string& base_dir = ".");
ServiceConfig load_service_config(const std::string& path);

struct ServiceResponse {
  int status = 200;
  nlohmann::json body;
};

// Session store and request semantics, independent of the HTTP layer.
// Thread-safe. Steps on one session are serialized; distinct sessions
// proceed in parallel.
class OracleService {
 public:
  using Clock = std::function<std::chrono::steady_clock::time_point()>;

  explicit OracleService(ServiceConfig config, Clock clock = {});
  ~OracleService();

  // Body: {"env": id, "seed": optional unsigned noise seed}.
  ServiceResponse create_session(const std::string& body);
  // Body: {"action": [itn, irs]}.
  ServiceResponse step(const std::string& token, const std::string& body);
  ServiceResponse reset(const std::string& token);
  ServiceResponse describe(const std::string& token);

  // Drops sessions idle for longer than the configured timeout. Also runs
  // on every session creation. Returns the number dropped.
  std::size_t expire_idle();
  std::size_t session_count() const;

 private:
  struct Session;
  std::shared_ptr<Session> find(const std::string& token);

  ServiceConfig config_;
  Clock clock_;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
};

// 128 random bits as 32 lowercase hex digits.
std::string new_session_token();

// HTTP front end. Routes:
//   POST /sessions
//   POST /sessions/{token}/step
//   POST /sessions/{token}/reset
//   GET  /sessions/{token}
class OracleServer {
 public:
  explicit OracleServer(OracleService& service);
  ~OracleServer();

  // Binds host:port (port 0 picks a free one) and returns the bound port,
  // or -1 on failure. Serve with listen_after_bind().
  int bind(const std::string& host, int port);
  // Blocks until stop().
  bool listen_after_bind();
  void stop();
  void wait_until_ready() const;

 private:
  OracleService& service_;
  std::unique_ptr<httplib::Server> server_;
};

// Splits "host:port"; throws std::invalid_argument when malformed.
std::pair<std::string, int> parse_address(const std::string& addr);

}  // namespace scarce_rl

#endif  // SCARCE_RL_SERVICE_ORACLE_SERVICE_H_
