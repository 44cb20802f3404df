// SPDX-License-Identifier: Apache-2.0
//
// amafris: array-fed RIS multibeam base station simulation library
// Copyright (C) 2026 The amafris authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

// Subcommands of the command-line front end. Each one writes its CSV and
// report files into an output directory plus an effective_config.json echo.

#include "amafris/scenario_config.hpp"

#include <filesystem>
#include <iosfwd>
#include <vector>

namespace amafris::cli {

enum exit_code : int { success = 0, runtime_failure = 1, config_failure = 2 };

struct DesignSummary {
    double sigma1 = 0.0;
    ComplexVector v1;
    double taper_db = 0.0;
    double max_u1_sq_db = 0.0;
    double boresight_gain_dbi = 0.0;
    double sidelobe_rel_db = 0.0;
    double beamwidth_3db_deg = 0.0;
    double exclusion_deg = 0.0;
    double edge_gain_dbi = 0.0;
    double required_p_rf_dbm = 0.0;
    Eigen::MatrixXd next_db;
};

DesignSummary cmd_design(const ScenarioConfig& config, const std::filesystem::path& out_dir, std::ostream& log);

struct FootprintSummary {
    std::vector<Direction> beams;
    FootprintPeak peak;
    std::vector<FootprintPeak> spots; // local maxima within 10 dB of the peak
    double resolution_m = 0.0;
};

FootprintSummary cmd_footprint(const ScenarioConfig& config, const std::filesystem::path& out_dir, std::ostream& log);

struct SimulateSummary {
    CampaignResult result;
    double p05 = 0.0;
    double median = 0.0;
    double p95 = 0.0;
    double mean = 0.0;
};

SimulateSummary cmd_simulate(const ScenarioConfig& config, const std::filesystem::path& out_dir, std::ostream& log);

struct PowerSummary {
    PowerReport arch1;
    PowerReport arch2;
    double ratio = 0.0;
    std::vector<BudgetLine> lines;
};

PowerSummary cmd_power(const ScenarioConfig& config, const std::filesystem::path& out_dir, std::ostream& log);

// Full argument handling: `amafris <design|footprint|simulate|power|validate>
// [config.json] [--seed N] [--out-dir DIR]`. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace amafris::cli
