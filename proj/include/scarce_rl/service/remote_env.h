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

#ifndef SCARCE_RL_SERVICE_REMOTE_ENV_H_
#define SCARCE_RL_SERVICE_REMOTE_ENV_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "scarce_rl/environments/environment.h"

namespace httplib {
class Client;
}

namespace scarce_rl {

// Network failure talking to the oracle. Nothing was charged locally; the
// call may be retried.
class TransportError : public std::runtime_error {
 public:
  explicit TransportError(const std::string& what)
      : std::runtime_error(what) {}
};

// Error body the server answered with, other than the budget and episode
// errors that map to BudgetExhausted / EpisodeDone.
class ServiceError : public std::runtime_error {
 public:
  ServiceError(int status, std::string code, const std::string& what)
      : std::runtime_error(what), status_(status), code_(std::move(code)) {}
  int status() const { return status_; }
  const std::string& code() const { return code_; }

 private:
  int status_;
  std::string code_;
};

// Client side of one oracle session, usable wherever an EpisodicEnv is.
// Budget and year are mirrored from server responses.
class RemoteEnv : public EpisodicEnv {
 public:
  // base_url like "http://127.0.0.1:8080". Opens a session on `env_id`.
  RemoteEnv(const std::string& base_url, const std::string& env_id,
            std::optional<std::uint64_t> seed = std::nullopt);
  ~RemoteEnv() override;

  StepResult step(const Action& action) override;
  void reset() override;
  Budget budget() const override { return budget_; }
  int current_year() const override { return year_; }
  bool episode_done() const override { return done_; }

  const std::string& token() const { return token_; }
  // Raw GET /sessions/{token}.
  nlohmann::json describe();

 private:
  nlohmann::json post(const std::string& path, const nlohmann::json& body);

  std::unique_ptr<httplib::Client> client_;
  std::string token_;
  Budget budget_;
  int year_ = 1;
  bool done_ = false;
  bool mid_episode_ = false;
};

}  // namespace scarce_rl

#endif  // SCARCE_RL_SERVICE_REMOTE_ENV_H_
