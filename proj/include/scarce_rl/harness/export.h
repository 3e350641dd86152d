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

#ifndef SCARCE_RL_HARNESS_EXPORT_H_
#define SCARCE_RL_HARNESS_EXPORT_H_

#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "scarce_rl/harness/experiment.h"
#include "scarce_rl/harness/landscape.h"

namespace scarce_rl {

inline constexpr int kResultsSchemaVersion = 1;

enum class ExportFormat { kCsv, kJson };

// Throws std::invalid_argument for anything but "csv" or "json".
ExportFormat parse_export_format(const std::string& s);

// Numbers use the shortest decimal form that reads back to the same double.
std::string format_number(double v);

// Columns: agent,env,run,seed,best_total,r1,...,r5,evaluations_used
std::string results_to_csv(std::span<const ExperimentResult> results);

nlohmann::json results_to_json(std::span<const ExperimentResult> results);
std::vector<ExperimentResult> results_from_json(const nlohmann::json& j);

// Columns: agent,mean,std,pct_of_baseline
std::string comparison_to_csv(std::span<const ComparisonRow> rows);
nlohmann::json comparison_to_json(std::span<const ComparisonRow> rows);
// Fixed-width table for terminals.
std::string comparison_to_text(std::span<const ComparisonRow> rows);

// Columns: itn,irs,reward
std::string landscape_to_csv(const Landscape& landscape);
nlohmann::json landscape_to_json(const Landscape& landscape);

std::string render_results(std::span<const ExperimentResult> results,
                           ExportFormat format);

// Writes `content` to `path`; throws std::runtime_error when the file
// cannot be written.
void write_file(const std::string& path, const std::string& content);

}  // namespace scarce_rl

#endif  // SCARCE_RL_HARNESS_EXPORT_H_
