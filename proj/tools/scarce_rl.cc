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

// scarce_rl: experiments, comparisons, landscape scans and the oracle
// service from one binary. Exit codes: 0 ok, 1 runtime failure, 2 usage or
// spec error.

#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "scarce_rl/agents/agent.h"
#include "scarce_rl/environments/env_config.h"
#include "scarce_rl/harness/experiment.h"
#include "scarce_rl/harness/export.h"
#include "scarce_rl/harness/landscape.h"
#include "scarce_rl/service/oracle_service.h"
#include "scarce_rl/service/remote_env.h"

namespace {

using namespace scarce_rl;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

// Bad input: reported with exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("scarce_rl");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("SCARCE_RL_LOG")) {
    const auto level = spdlog::level::from_str(env);
    // from_str maps unknown names to off; only honor real names.
    if (level != spdlog::level::off || std::string(env) == "off") {
      spdlog::set_level(level);
    } else {
      spdlog::warn("ignoring unknown SCARCE_RL_LOG level \"{}\"", env);
    }
  }
}

void emit(const std::string& output, const std::string& content) {
  if (output.empty() || output == "-") {
    std::cout << content;
    std::cout.flush();
  } else {
    write_file(output, content);
    spdlog::info("wrote {}", output);
  }
}

struct CommonOptions {
  std::string output;
  std::string format = "csv";
  std::optional<std::uint64_t> seed;
  std::optional<int> runs;
  std::optional<int> episodes;
  int threads = 1;

  SpecOverrides overrides() const { return {seed, runs, episodes}; }
};

void add_common(CLI::App* cmd, CommonOptions& o, bool with_overrides) {
  cmd->add_option("-o,--output", o.output, "Output file (default stdout)");
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  if (!with_overrides) return;
  cmd->add_option("--seed", o.seed, "First seed; runs use seed, seed+1, ...");
  cmd->add_option("--runs", o.runs, "Number of runs")->check(CLI::PositiveNumber);
  cmd->add_option("--episodes", o.episodes, "Episode allowance per run")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--threads", o.threads, "Worker threads")
      ->check(CLI::PositiveNumber);
}

ExperimentSpec load_spec(const std::string& path, const CommonOptions& o) {
  ExperimentSpec spec = load_experiment_spec(path);
  apply_overrides(spec, o.overrides());
  return spec;
}

int cmd_run(const std::string& spec_path, const CommonOptions& o) {
  const ExperimentSpec spec = load_spec(spec_path, o);
  spdlog::info("running {} on {}: {} runs", spec.agent, spec.env, spec.runs);
  const ExperimentResult result = run_experiment(spec, o.threads);
  spdlog::info("mean {} std {}", result.mean_score, result.std_score);
  const std::vector<ExperimentResult> all{result};
  emit(o.output, render_results(all, parse_export_format(o.format)));
  return kExitOk;
}

int cmd_compare(const std::vector<std::string>& spec_paths,
                const CommonOptions& o, bool format_given) {
  std::vector<ExperimentSpec> specs;
  for (const std::string& p : spec_paths) specs.push_back(load_spec(p, o));
  const auto results = run_comparison(specs, o.threads);
  const auto rows = compare_agents(results);
  const ExportFormat format = parse_export_format(o.format);
  if (format == ExportFormat::kJson && format_given) {
    std::cout << comparison_to_json(rows).dump(2) << "\n";
  } else {
    std::cout << comparison_to_text(rows);
  }
  if (!o.output.empty()) {
    write_file(o.output, format == ExportFormat::kJson
                             ? comparison_to_json(rows).dump(2) + "\n"
                             : comparison_to_csv(rows));
  }
  return kExitOk;
}

int cmd_landscape(const std::string& env_id, int year, int grid_n,
                  bool scale_display, const CommonOptions& o) {
  EnvConfig config;
  try {
    config = resolve_env(env_id);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  const Landscape l = landscape_scan(config, year, grid_n,
                                     default_context_policy(), scale_display);
  emit(o.output, parse_export_format(o.format) == ExportFormat::kJson
                     ? landscape_to_json(l).dump(2) + "\n"
                     : landscape_to_csv(l));
  return kExitOk;
}

int cmd_serve(const std::string& config_path, const std::string& addr,
              std::optional<long long> idle_timeout) {
  ServiceConfig config = config_path.empty()
                             ? default_service_config()
                             : load_service_config(config_path);
  if (idle_timeout) config.idle_timeout = std::chrono::seconds(*idle_timeout);
  const auto [host, port] = parse_address(addr);

  // Block the stop signals before any thread starts so only the waiter
  // below receives them.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  OracleService service(std::move(config));
  OracleServer server(service);
  const int bound = server.bind(host, port);
  if (bound < 0) throw std::runtime_error("cannot bind " + addr);
  std::cout << "listening on " << host << ":" << bound << std::endl;
  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    spdlog::info("signal {}, stopping", sig);
    server.stop();
  });
  const bool ok = server.listen_after_bind();
  // Wake the waiter when the server stopped on its own.
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  return ok ? kExitOk : kExitRuntime;
}

// Runs one agent over the wire and in process with the same seeds and
// reports both. Without --addr an in-process server on a free port is used.
int cmd_demo(const std::string& agent_id, const std::string& env_id,
             std::uint64_t seed, const std::string& addr,
             const CommonOptions& o) {
  const auto agent = make_agent(agent_id);  // validates the id
  std::optional<OracleService> service;
  std::optional<OracleServer> server;
  std::thread server_thread;
  std::string base_url;
  if (addr.empty()) {
    service.emplace(default_service_config());
    server.emplace(*service);
    const int port = server->bind("127.0.0.1", 0);
    if (port < 0) throw std::runtime_error("cannot bind a local port");
    server_thread = std::thread([&] { server->listen_after_bind(); });
    server->wait_until_ready();
    base_url = "http://127.0.0.1:" + std::to_string(port);
  } else {
    parse_address(addr);
    base_url = "http://" + addr;
  }

  nlohmann::json report;
  try {
    RemoteEnv remote(base_url, env_id, seed);
    SeededRng remote_rng(seed);
    const AgentResult over_wire = make_agent(agent_id)->run(remote, remote_rng);

    EnvConfig config = resolve_env(env_id);
    set_env_seed(config, seed);
    BudgetedEnv local(config);
    SeededRng local_rng(seed);
    const AgentResult in_process = make_agent(agent_id)->run(local, local_rng);

    report = {{"agent", agent_id},
              {"env", env_id},
              {"seed", seed},
              {"remote", {{"best", over_wire.best}, {"score", over_wire.score}}},
              {"local", {{"best", in_process.best}, {"score", in_process.score}}},
              {"identical", over_wire.best == in_process.best},
              {"session", remote.describe()}};
  } catch (...) {
    if (server) server->stop();
    if (server_thread.joinable()) server_thread.join();
    throw;
  }
  if (server) server->stop();
  if (server_thread.joinable()) server_thread.join();
  emit(o.output, report.dump(2) + "\n");
  return report["identical"].get<bool>() ? kExitOk : kExitRuntime;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Budget-limited sequential decision agents and experiments"};
  app.require_subcommand(1);

  CommonOptions run_opts;
  std::string run_spec;
  auto* run = app.add_subcommand("run", "Run one experiment spec");
  run->add_option("spec", run_spec, "Experiment spec JSON")->required();
  add_common(run, run_opts, true);

  CommonOptions cmp_opts;
  std::vector<std::string> cmp_specs;
  auto* compare = app.add_subcommand("compare", "Compare agents on shared seeds");
  compare->add_option("specs", cmp_specs, "Experiment spec JSON files")
      ->required();
  add_common(compare, cmp_opts, true);

  CommonOptions land_opts;
  std::string land_env = "env_a";
  int land_year = 1;
  int land_n = 40;
  bool scale_display = false;
  auto* landscape = app.add_subcommand("landscape", "Scan one year's rewards");
  landscape->add_option("env", land_env, "env_a, env_b or a config path");
  landscape->add_option("--year", land_year, "Year 1..5")
      ->check(CLI::Range(1, kHorizon));
  landscape->add_option("-n", land_n, "Grid points per axis")
      ->check(CLI::Range(2, 100000));
  landscape->add_flag("--scale-display", scale_display,
                      "Divide rewards by 100");
  add_common(landscape, land_opts, false);

  std::string serve_config;
  std::string serve_addr = "127.0.0.1:8080";
  std::optional<long long> idle_timeout;
  auto* serve = app.add_subcommand("serve", "Run the HTTP oracle");
  serve->add_option("--config", serve_config, "envs.json");
  serve->add_option("--addr", serve_addr, "host:port");
  serve->add_option("--idle-timeout", idle_timeout, "Session idle seconds")
      ->check(CLI::PositiveNumber);

  CommonOptions demo_opts;
  std::string demo_agent = "qlearning_seq_break";
  std::string demo_env = "env_a";
  std::uint64_t demo_seed = 1;
  std::string demo_addr;
  auto* demo = app.add_subcommand("demo", "Run an agent against the oracle");
  demo->add_option("--agent", demo_agent, "Agent id");
  demo->add_option("--env", demo_env, "Env id registered on the server");
  demo->add_option("--seed", demo_seed, "Agent and env noise seed");
  demo->add_option("--addr", demo_addr,
                   "host:port of a running server (default: start one)");
  demo->add_option("-o,--output", demo_opts.output, "Output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*run) return cmd_run(run_spec, run_opts);
    if (*compare) {
      return cmd_compare(cmp_specs, cmp_opts,
                         compare->count("--format") > 0);
    }
    if (*landscape) {
      return cmd_landscape(land_env, land_year, land_n, scale_display,
                           land_opts);
    }
    if (*serve) return cmd_serve(serve_config, serve_addr, idle_timeout);
    if (*demo) {
      return cmd_demo(demo_agent, demo_env, demo_seed, demo_addr, demo_opts);
    }
  } catch (const UsageError& e) {
    spdlog::error("{}", e.what());
    return kExitUsage;
  } catch (const RunError& e) {
    spdlog::error("{}", e.what());
    return kExitRuntime;
  } catch (const std::invalid_argument& e) {
    spdlog::error("{}", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kExitRuntime;
  }
  return kExitUsage;
}
