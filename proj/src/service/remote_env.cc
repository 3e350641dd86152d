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

#include "scarce_rl/service/remote_env.h"

#include "httplib.h"

namespace scarce_rl {

RemoteEnv::RemoteEnv(const std::string& base_url, const std::string& env_id,
                     std::optional<std::uint64_t> seed)
    : client_(std::make_unique<httplib::Client>(base_url)) {
  if (!client_->is_valid()) {
    throw std::invalid_argument("bad oracle url " + base_url);
  }
  client_->set_connection_timeout(5);
  client_->set_read_timeout(30);
  nlohmann::json body = {{"env", env_id}};
  if (seed) body["seed"] = *seed;
  const nlohmann::json r = post("/sessions", body);
  token_ = r.at("token").get<std::string>();
  budget_ = Budget(r.at("remaining").at("evaluations").get<int>(),
                   r.at("remaining").at("episodes").get<int>());
}

RemoteEnv::~RemoteEnv() = default;

nlohmann::json RemoteEnv::post(const std::string& path,
                               const nlohmann::json& body) {
  auto res = client_->Post(path, body.dump(), "application/json");
  if (!res) {
    throw TransportError("oracle request " + path + " failed: " +
                         httplib::to_string(res.error()));
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(res->body);
  } catch (const nlohmann::json::parse_error&) {
    throw TransportError("oracle sent a non-JSON body for " + path);
  }
  if (res->status == 200) return j;
  const std::string code = j.value("error", std::string("unknown"));
  if (res->status == 429) throw BudgetExhausted("oracle: " + code);
  if (res->status == 409) throw EpisodeDone("oracle: " + code);
  throw ServiceError(res->status, code,
                     "oracle " + path + ": " + code + " (" +
                         std::to_string(res->status) + ")");
}

StepResult RemoteEnv::step(const Action& action) {
  const nlohmann::json j =
      post("/sessions/" + token_ + "/step",
           {{"action", {action.itn(), action.irs()}}});
  budget_.charge_evaluation(!mid_episode_);
  StepResult r;
  r.reward = j.at("reward").get<double>();
  r.year = j.at("year").get<int>();
  r.done = j.at("done").get<bool>();
  r.remaining_evaluations = j.at("remaining").at("evaluations").get<int>();
  r.remaining_episodes = j.at("remaining").at("episodes").get<int>();
  mid_episode_ = !r.done;
  if (r.done) budget_.close_episode();
  year_ = r.year;
  done_ = r.done;
  return r;
}

void RemoteEnv::reset() {
  post("/sessions/" + token_ + "/reset", nlohmann::json::object());
  if (mid_episode_) budget_.close_episode();
  mid_episode_ = false;
  year_ = 1;
  done_ = false;
}

nlohmann::json RemoteEnv::describe() {
  auto res = client_->Get("/sessions/" + token_);
  if (!res) {
    throw TransportError("oracle request failed: " +
                         httplib::to_string(res.error()));
  }
  return nlohmann::json::parse(res->body);
}

}  // namespace scarce_rl
