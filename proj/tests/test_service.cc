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

#include <atomic>
#include <chrono>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "doctest.h"
#include "scarce_rl/agents/evolutionary.h"
#include "scarce_rl/environments/environment.h"
#include "scarce_rl/service/oracle_service.h"
#include "scarce_rl/service/remote_env.h"

using namespace scarce_rl;
using nlohmann::json;

namespace {

std::string step_body(double x, double y) {
  return json{{"action", {x, y}}}.dump();
}

std::string token_of(OracleService& s, const std::string& env = "env_a") {
  const ServiceResponse r = s.create_session(json{{"env", env}}.dump());
  REQUIRE(r.status == 200);
  return r.body["token"].get<std::string>();
}

ServiceConfig noisy_config() {
  ServiceConfig c = default_service_config();
  EnvConfigA a = default_env_a();
  a.noise_std = 4.0;
  c.envs.emplace("noisy", a);
  return c;
}

// In-process HTTP server on a free port.
class TestServer {
 public:
  explicit TestServer(ServiceConfig config = default_service_config())
      : service_(std::move(config)), server_(service_) {
    port_ = server_.bind("127.0.0.1", 0);
    REQUIRE(port_ > 0);
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~TestServer() { stop(); }
  void stop() {
    if (thread_.joinable()) {
      server_.stop();
      thread_.join();
    }
  }
  std::string url() const {
    return "http://127.0.0.1:" + std::to_string(port_);
  }
  OracleService& service() { return service_; }

 private:
  OracleService service_;
  OracleServer server_;
  int port_ = -1;
  std::thread thread_;
};

std::vector<Action> golden_actions() {
  SeededRng rng(2024);
  std::vector<Action> out;
  for (int i = 0; i < 100; ++i) out.emplace_back(rng.uniform(), rng.uniform());
  return out;
}

}  // namespace

TEST_CASE("session creation") {
  OracleService s(default_service_config());
  const ServiceResponse a = s.create_session(R"({"env":"env_a"})");
  const ServiceResponse b = s.create_session(R"({"env":"env_b"})");
  CHECK(a.status == 200);
  CHECK(a.body["token"] != b.body["token"]);
  CHECK(a.body["token"].get<std::string>().size() == 32);
  CHECK(a.body["remaining"] == json{{"evaluations", 100}, {"episodes", 20}});

  const ServiceResponse bad = s.create_session(R"({"env":"env_z"})");
  CHECK(bad.status == 404);
  CHECK(bad.body["error"] == "unknown_env");
  CHECK(s.create_session("not json").status == 400);
  CHECK(s.create_session(R"({"env":"env_a","seed":-3})").status == 400);

  std::set<std::string> tokens;
  for (int i = 0; i < 1000; ++i) tokens.insert(new_session_token());
  CHECK(tokens.size() == 1000);
}

TEST_CASE("stepping") {
  OracleService s(default_service_config());
  const std::string t = token_of(s);
  for (int y = 1; y <= 4; ++y) {
    const ServiceResponse r = s.step(t, step_body(0.5, 0.5));
    CHECK(r.status == 200);
    CHECK(r.body["year"] == y + 1);
    CHECK(r.body["done"] == false);
  }
  const ServiceResponse fifth = s.step(t, step_body(0.5, 0.5));
  CHECK(fifth.body["done"] == true);
  const ServiceResponse sixth = s.step(t, step_body(0.5, 0.5));
  CHECK(sixth.status == 409);
  CHECK(sixth.body["error"] == "episode_done");

  CHECK(s.step(t, R"({"action":[0.5]})").status == 400);
  CHECK(s.step(t, R"({"action":[1.5, 0.2]})").body["error"] == "malformed_action");
  CHECK(s.step("deadbeef", step_body(0.5, 0.5)).status == 404);
  CHECK(s.step("deadbeef", step_body(0.5, 0.5)).body["error"] == "unknown_session");
}

TEST_CASE("budget exhaustion") {
  OracleService s(default_service_config());
  const std::string t = token_of(s);
  for (int e = 0; e < 20; ++e) {
    s.reset(t);
    for (int y = 0; y < 5; ++y) REQUIRE(s.step(t, step_body(0.2, 0.2)).status == 200);
  }
  s.reset(t);
  const ServiceResponse r = s.step(t, step_body(0.2, 0.2));
  CHECK(r.status == 429);
  CHECK(r.body["error"] == "budget_exhausted");
  CHECK(s.describe(t).body["used"]["evaluations"] == 100);
}

TEST_CASE("reset semantics") {
  OracleService s(default_service_config());
  const std::string t = token_of(s);
  for (int y = 0; y < 5; ++y) s.step(t, step_body(0.2, 0.2));
  CHECK(s.describe(t).body["used"]["episodes"] == 1);
  const ServiceResponse r = s.reset(t);
  CHECK(r.body["year"] == 1);
  CHECK(s.describe(t).body["used"]["episodes"] == 1);

  s.step(t, step_body(0.2, 0.2));
  s.step(t, step_body(0.2, 0.2));
  s.reset(t);
  CHECK(s.describe(t).body["used"]["episodes"] == 2);
  CHECK(s.step(t, step_body(0.2, 0.2)).body["year"] == 2);
  CHECK(s.reset("nope").status == 404);
  CHECK(s.describe(t).body["history"].size() == 1);
}

TEST_CASE("idle sessions expire") {
  auto now = std::chrono::steady_clock::time_point{};
  ServiceConfig c = default_service_config();
  c.idle_timeout = std::chrono::seconds(60);
  OracleService s(c, [&now] { return now; });
  const std::string old = token_of(s);
  now += std::chrono::seconds(30);
  const std::string young = token_of(s);
  now += std::chrono::seconds(40);  // old idle 70 s, young 40 s
  CHECK(s.expire_idle() == 1);
  CHECK(s.describe(old).status == 404);
  CHECK(s.describe(young).status == 200);
  now += std::chrono::seconds(50);  // describe refreshed young at 70 s
  CHECK(s.session_count() == 1);
  token_of(s);
  CHECK(s.session_count() == 2);
  now += std::chrono::seconds(61);
  token_of(s);  // creation also sweeps
  CHECK(s.session_count() == 1);
}

TEST_CASE("service config") {
  const std::string dir = std::string(SCARCE_RL_SOURCE_DIR) + "/configs";
  const ServiceConfig c = load_service_config(dir + "/envs.json");
  CHECK(c.envs.size() == 2);
  CHECK(c.envs.at("env_a") == EnvConfig(default_env_a()));
  CHECK(c.idle_timeout == std::chrono::seconds(3600));
  CHECK_THROWS_AS(service_config_from_json(json{{"envs", 3}}),
                  std::invalid_argument);
  const ServiceConfig inline_cfg = service_config_from_json(
      json{{"envs", {{"x", env_config_to_json(default_env_b())}}}});
  CHECK(inline_cfg.envs.at("x") == EnvConfig(default_env_b()));
  CHECK(parse_address("127.0.0.1:8080") == std::make_pair(std::string("127.0.0.1"), 8080));
  CHECK_THROWS_AS(parse_address("nohost"), std::invalid_argument);
  CHECK_THROWS_AS(parse_address("h:99999"), std::invalid_argument);
}

TEST_CASE("remote rewards equal in-process rewards") {
  TestServer server(noisy_config());
  RemoteEnv remote(server.url(), "noisy", 7);
  EnvConfig local_cfg = noisy_config().envs.at("noisy");
  set_env_seed(local_cfg, 7);
  BudgetedEnv local(local_cfg);

  const std::vector<Action> golden = golden_actions();
  for (int i = 0; i < 100; ++i) {
    if (i % 5 == 0) {
      remote.reset();
      local.reset();
    }
    const StepResult a = remote.step(golden[i]);
    const StepResult b = local.step(golden[i]);
    CHECK(a.reward == b.reward);
    CHECK(a.year == b.year);
    CHECK(a.done == b.done);
  }
  CHECK(remote.budget() == local.budget());
  remote.reset();
  CHECK_THROWS_AS(remote.step(golden[0]), BudgetExhausted);
}

TEST_CASE("remote errors map to local exceptions") {
  TestServer server;
  RemoteEnv env(server.url(), "env_a");
  for (int y = 0; y < 5; ++y) env.step(Action(0.1, 0.1));
  CHECK_THROWS_AS(env.step(Action(0.1, 0.1)), EpisodeDone);
  CHECK_THROWS_AS(RemoteEnv(server.url(), "env_q"), ServiceError);
  CHECK(env.describe()["used"]["evaluations"] == 5);
}

TEST_CASE("random search through the client matches a local run") {
  TestServer server;
  for (int seed = 1; seed <= 3; ++seed) {
    RemoteEnv remote(server.url(), "env_b");
    BudgetedEnv local{EnvConfig(default_env_b())};
    SeededRng r1(seed), r2(seed);
    CHECK(run_random_search(remote, r1) == run_random_search(local, r2));
    CHECK(remote.budget() == local.budget());
  }
}

TEST_CASE("server down gives a transport error and charges nothing") {
  auto server = std::make_unique<TestServer>();
  RemoteEnv env(server->url(), "env_a");
  env.step(Action(0.3, 0.3));
  const Budget before = env.budget();
  server->stop();
  CHECK_THROWS_AS(env.step(Action(0.3, 0.3)), TransportError);
  CHECK(env.budget() == before);
  CHECK(env.current_year() == 2);
  CHECK_THROWS_AS(RemoteEnv(server->url(), "env_a"), TransportError);
}

TEST_CASE("concurrent clients") {
  TestServer server;
  SUBCASE("one token never exceeds the budget") {
    RemoteEnv owner(server.url(), "env_a");
    const std::string token = owner.token();
    std::atomic<int> ok{0};
    std::vector<std::thread> threads;
    for (int t = 0; t < 8; ++t) {
      threads.emplace_back([&] {
        for (int i = 0; i < 40; ++i) {
          const ServiceResponse r =
              server.service().step(token, step_body(0.4, 0.4));
          if (r.status == 200) {
            ++ok;
          } else if (r.status == 409) {
            server.service().reset(token);
          }
        }
      });
    }
    for (auto& th : threads) th.join();
    CHECK(ok.load() <= 100);
    CHECK(server.service().describe(token).body["used"]["evaluations"] ==
          ok.load());
  }
  SUBCASE("distinct sessions are isolated") {
    std::vector<std::thread> threads;
    std::vector<int> used(4);
    for (int t = 0; t < 4; ++t) {
      threads.emplace_back([&, t] {
        RemoteEnv env(server.url(), "env_b");
        for (int k = 0; k <= t; ++k) {
          env.reset();
          for (int y = 0; y < 5; ++y) env.step(Action(0.6, 0.6));
        }
        used[t] = env.budget().used_evaluations();
      });
    }
    for (auto& th : threads) th.join();
    CHECK(used == std::vector<int>{5, 10, 15, 20});
  }
}
