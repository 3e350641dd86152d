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

#include "scarce_rl/service/oracle_service.h"

#include <filesystem>
#include <fstream>
#include <random>
#include <stdexcept>
#include <vector>

#include "httplib.h"
#include "scarce_rl/environments/environment.h"

namespace scarce_rl {

ServiceConfig default_service_config() {
  ServiceConfig c;
  c.envs.emplace("env_a", default_env_a());
  c.envs.emplace("env_b", default_env_b());
  return c;
}

ServiceConfig service_config_from_json(const nlohmann::json& j,
                                       const std::string& base_dir) {
  if (!j.is_object() || !j.contains("envs") || !j["envs"].is_object()) {
    throw std::invalid_argument("service config needs an \"envs\" object");
  }
  ServiceConfig c;
  for (const auto& [id, entry] : j["envs"].items()) {
    EnvConfig env;
    if (entry.is_object()) {
      env = env_config_from_json(entry);
    } else if (entry.is_string()) {
      std::string ref = entry.get<std::string>();
      if (ref != "env_a" && ref != "env_b" &&
          std::filesystem::path(ref).is_relative()) {
        ref = (std::filesystem::path(base_dir) / ref).string();
      }
      env = resolve_env(ref);
    } else {
      throw std::invalid_argument("env \"" + id +
                                  "\" must be a name, path or object");
    }
    validate(env);
    c.envs.emplace(id, std::move(env));
  }
  if (j.contains("idle_timeout_seconds")) {
    const long long s = j["idle_timeout_seconds"].get<long long>();
    if (s <= 0) throw std::invalid_argument("idle_timeout_seconds must be > 0");
    c.idle_timeout = std::chrono::seconds(s);
  }
  return c;
}

ServiceConfig load_service_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open service config " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  return service_config_from_json(
      j, std::filesystem::path(path).parent_path().string());
}

std::string new_session_token() {
  static std::mutex mu;
  static std::random_device device;
  std::lock_guard lock(mu);
  static const char* kHex = "0123456789abcdef";
  std::string token;
  for (int word = 0; word < 4; ++word) {
    std::uint32_t v = device();
    for (int k = 0; k < 8; ++k) {
      token += kHex[v & 0xf];
      v >>= 4;
    }
  }
  return token;
}

// ---------------------------------------------------------------------------

struct OracleService::Session {
  Session(std::string env_id, const EnvConfig& config, Budget budget)
      : env_id(std::move(env_id)), env(config, budget) {}
  std::mutex mu;  // one in-flight request per session; others queue
  std::string env_id;
  BudgetedEnv env;
  std::chrono::steady_clock::time_point last_used;
};

namespace {

ServiceResponse error(int status, const std::string& code,
                      const std::string& detail = {}) {
  nlohmann::json body = {{"error", code}};
  if (!detail.empty()) body["detail"] = detail;
  return {status, body};
}

nlohmann::json remaining(const Budget& b) {
  return {{"evaluations", b.remaining_evaluations()},
          {"episodes", b.remaining_episodes()}};
}

}  // namespace

OracleService::OracleService(ServiceConfig config, Clock clock)
    : config_(std::move(config)), clock_(std::move(clock)) {
  if (!clock_) clock_ = [] { return std::chrono::steady_clock::now(); };
}

OracleService::~OracleService() = default;

std::size_t OracleService::session_count() const {
  std::lock_guard lock(mu_);
  return sessions_.size();
}

std::size_t OracleService::expire_idle() {
  const auto now = clock_();
  std::lock_guard lock(mu_);
  std::size_t dropped = 0;
  for (auto it = sessions_.begin(); it != sessions_.end();) {
    // A session busy with a request is not idle.
    std::unique_lock session_lock(it->second->mu, std::try_to_lock);
    if (session_lock.owns_lock() &&
        now - it->second->last_used > config_.idle_timeout) {
      session_lock.unlock();
      it = sessions_.erase(it);
      ++dropped;
    } else {
      ++it;
    }
  }
  return dropped;
}

std::shared_ptr<OracleService::Session> OracleService::find(
    const std::string& token) {
  std::lock_guard lock(mu_);
  auto it = sessions_.find(token);
  if (it == sessions_.end()) return nullptr;
  return it->second;
}

ServiceResponse OracleService::create_session(const std::string& body) {
  expire_idle();
  nlohmann::json j;
  try {
    j = body.empty() ? nlohmann::json::object() : nlohmann::json::parse(body);
  } catch (const nlohmann::json::parse_error&) {
    return error(400, "malformed_request", "body is not JSON");
  }
  if (!j.is_object() || !j.contains("env") || !j["env"].is_string()) {
    return error(400, "malformed_request", "expected {\"env\": id}");
  }
  const std::string env_id = j["env"].get<std::string>();
  auto env_it = config_.envs.find(env_id);
  if (env_it == config_.envs.end()) return error(404, "unknown_env");

  EnvConfig env = env_it->second;
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) {
      return error(400, "malformed_request", "seed must be unsigned");
    }
    set_env_seed(env, j["seed"].get<std::uint64_t>());
  }
  auto session = std::make_shared<Session>(env_id, env, config_.budget);
  session->last_used = clock_();
  std::string token;
  {
    std::lock_guard lock(mu_);
    do {
      token = new_session_token();
    } while (sessions_.count(token));
    sessions_.emplace(token, session);
  }
  return {200,
          {{"token", token},
           {"env", env_id},
           {"year", 1},
           {"remaining", remaining(session->env.budget())}}};
}

ServiceResponse OracleService::step(const std::string& token,
                                    const std::string& body) {
  auto session = find(token);
  if (!session) return error(404, "unknown_session");

  Action action;
  try {
    const auto j = nlohmann::json::parse(body);
    const auto& a = j.at("action");
    if (!a.is_array() || a.size() != 2 || !a[0].is_number() ||
        !a[1].is_number()) {
      return error(400, "malformed_action", "expected [itn, irs]");
    }
    action = Action(a[0].get<double>(), a[1].get<double>());
  } catch (const std::exception& e) {
    return error(400, "malformed_action", e.what());
  }

  std::lock_guard lock(session->mu);
  session->last_used = clock_();
  try {
    const StepResult r = session->env.step(action);
    return {200,
            {{"reward", r.reward},
             {"year", r.year},
             {"done", r.done},
             {"remaining", remaining(session->env.budget())}}};
  } catch (const BudgetExhausted& e) {
    return error(429, "budget_exhausted", e.what());
  } catch (const EpisodeDone& e) {
    return error(409, "episode_done", e.what());
  }
}

ServiceResponse OracleService::reset(const std::string& token) {
  auto session = find(token);
  if (!session) return error(404, "unknown_session");
  std::lock_guard lock(session->mu);
  session->last_used = clock_();
  session->env.reset();
  return {200,
          {{"year", 1}, {"remaining", remaining(session->env.budget())}}};
}

ServiceResponse OracleService::describe(const std::string& token) {
  auto session = find(token);
  if (!session) return error(404, "unknown_session");
  std::lock_guard lock(session->mu);
  session->last_used = clock_();
  const Budget b = session->env.budget();
  return {200,
          {{"env", session->env_id},
           {"year", session->env.current_year()},
           {"done", session->env.episode_done()},
           {"history", session->env.history()},
           {"remaining", remaining(b)},
           {"used",
            {{"evaluations", b.used_evaluations()},
             {"episodes", b.used_episodes()}}}}};
}

// ---------------------------------------------------------------------------

std::pair<std::string, int> parse_address(const std::string& addr) {
  const auto colon = addr.rfind(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == addr.size()) {
    throw std::invalid_argument("address must look like host:port");
  }
  const std::string port_s = addr.substr(colon + 1);
  std::size_t used = 0;
  int port = -1;
  try {
    port = std::stoi(port_s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != port_s.size() || port < 0 || port > 65535) {
    throw std::invalid_argument("bad port in address " + addr);
  }
  return {addr.substr(0, colon), port};
}

OracleServer::OracleServer(OracleService& service)
    : service_(service), server_(std::make_unique<httplib::Server>()) {
  auto reply = [](httplib::Response& res, const ServiceResponse& r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  server_->Post("/sessions",
                [this, reply](const httplib::Request& req,
                              httplib::Response& res) {
                  reply(res, service_.create_session(req.body));
                });
  server_->Post(R"(/sessions/([0-9a-zA-Z]+)/step)",
                [this, reply](const httplib::Request& req,
                              httplib::Response& res) {
                  reply(res, service_.step(req.matches[1], req.body));
                });
  server_->Post(R"(/sessions/([0-9a-zA-Z]+)/reset)",
                [this, reply](const httplib::Request& req,
                              httplib::Response& res) {
                  reply(res, service_.reset(req.matches[1]));
                });
  server_->Get(R"(/sessions/([0-9a-zA-Z]+))",
               [this, reply](const httplib::Request& req,
                             httplib::Response& res) {
                 reply(res, service_.describe(req.matches[1]));
               });
}

OracleServer::~OracleServer() { stop(); }

int OracleServer::bind(const std::string& host, int port) {
  if (port == 0) return server_->bind_to_any_port(host);
  return server_->bind_to_port(host, port) ? port : -1;
}

bool OracleServer::listen_after_bind() { return server_->listen_after_bind(); }

void OracleServer::stop() {
  if (server_) server_->stop();
}

void OracleServer::wait_until_ready() const { server_->wait_until_ready(); }

}  // namespace scarce_rl
