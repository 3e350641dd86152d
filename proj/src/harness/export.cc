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

#include "scarce_rl/harness/export.h"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <fmt/format.h>

namespace scarce_rl {

ExportFormat parse_export_format(const std::string& s) {
  if (s == "csv") return ExportFormat::kCsv;
  if (s == "json") return ExportFormat::kJson;
  throw std::invalid_argument("format must be csv or json, got \"" + s + "\"");
}

std::string format_number(double v) {
  // fmt prints the shortest round-trip representation.
  return fmt::format("{}", v);
}

namespace {

// Quotes a CSV field when it holds a separator, quote or newline.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

}  // namespace

std::string results_to_csv(std::span<const ExperimentResult> results) {
  std::string out =
      "agent,env,run,seed,best_total,r1,r2,r3,r4,r5,evaluations_used\n";
  for (const ExperimentResult& res : results) {
    for (const RunResult& r : res.runs) {
      out += fmt::format("{},{},{},{},{}", csv_field(res.spec.agent),
                         csv_field(res.spec.env), r.run, r.seed,
                         format_number(r.best.total));
      for (double y : r.best.yearly_rewards) out += "," + format_number(y);
      out += fmt::format(",{}\n", r.evaluations_used);
    }
  }
  return out;
}

nlohmann::json results_to_json(std::span<const ExperimentResult> results) {
  nlohmann::json experiments = nlohmann::json::array();
  for (const ExperimentResult& res : results) {
    nlohmann::json runs = nlohmann::json::array();
    for (const RunResult& r : res.runs) {
      runs.push_back({{"run", r.run},
                      {"seed", r.seed},
                      {"best", r.best},
                      {"score", r.score},
                      {"evaluations_used", r.evaluations_used},
                      {"episodes_used", r.episodes_used}});
    }
    experiments.push_back({{"spec", spec_to_json(res.spec)},
                           {"runs", runs},
                           {"mean_score", res.mean_score},
                           {"std_score", res.std_score}});
  }
  return {{"schema_version", kResultsSchemaVersion},
          {"experiments", experiments}};
}

std::vector<ExperimentResult> results_from_json(const nlohmann::json& j) {
  const int version = j.at("schema_version").get<int>();
  if (version != kResultsSchemaVersion) {
    throw std::invalid_argument(
        fmt::format("unsupported results schema version {}", version));
  }
  std::vector<ExperimentResult> out;
  for (const auto& e : j.at("experiments")) {
    ExperimentResult res;
    res.spec = spec_from_json(e.at("spec"));
    for (const auto& r : e.at("runs")) {
      RunResult run;
      run.run = r.at("run").get<int>();
      run.seed = r.at("seed").get<std::uint64_t>();
      run.best = r.at("best").get<EpisodeRecord>();
      run.score = r.at("score").get<double>();
      run.evaluations_used = r.at("evaluations_used").get<int>();
      run.episodes_used = r.at("episodes_used").get<int>();
      res.runs.push_back(run);
    }
    res.mean_score = e.at("mean_score").get<double>();
    res.std_score = e.at("std_score").get<double>();
    out.push_back(std::move(res));
  }
  return out;
}

std::string comparison_to_csv(std::span<const ComparisonRow> rows) {
  std::string out = "agent,mean,std,pct_of_baseline\n";
  for (const ComparisonRow& r : rows) {
    out += fmt::format("{},{},{},{}\n", csv_field(r.agent),
                       format_number(r.mean_best_reward),
                       format_number(r.std_best_reward),
                       format_number(r.pct_of_baseline));
  }
  return out;
}

nlohmann::json comparison_to_json(std::span<const ComparisonRow> rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const ComparisonRow& r : rows) {
    arr.push_back({{"agent", r.agent},
                   {"mean", r.mean_best_reward},
                   {"std", r.std_best_reward},
                   {"pct_of_baseline", r.pct_of_baseline}});
  }
  return {{"schema_version", kResultsSchemaVersion}, {"rows", arr}};
}

std::string comparison_to_text(std::span<const ComparisonRow> rows) {
  std::string out = fmt::format("{:<22} {:>10} {:>10} {:>8}\n", "agent",
                                "mean", "std", "%base");
  for (const ComparisonRow& r : rows) {
    out += fmt::format("{:<22} {:>10.2f} {:>10.2f} {:>7.1f}%\n", r.agent,
                       r.mean_best_reward, r.std_best_reward,
                       r.pct_of_baseline);
  }
  return out;
}

std::string landscape_to_csv(const Landscape& landscape) {
  std::string out = "itn,irs,reward\n";
  for (const LandscapeCell& c : landscape.cells) {
    out += fmt::format("{},{},{}\n", format_number(c.itn),
                       format_number(c.irs), format_number(c.reward));
  }
  return out;
}

nlohmann::json landscape_to_json(const Landscape& landscape) {
  nlohmann::json cells = nlohmann::json::array();
  for (const LandscapeCell& c : landscape.cells) {
    cells.push_back({c.itn, c.irs, c.reward});
  }
  return {{"schema_version", kResultsSchemaVersion},
          {"year", landscape.year},
          {"grid_n", landscape.grid_n},
          {"cells", cells}};
}

std::string render_results(std::span<const ExperimentResult> results,
                           ExportFormat format) {
  if (format == ExportFormat::kCsv) return results_to_csv(results);
  return results_to_json(results).dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << content;
  out.flush();
  if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace scarce_rl
