// SPDX-License-Identifier: Apache-2.0
//
// mpir - multi-pulse impulse radio link simulator
// Copyright (C) 2026 The mpir authors
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

#include "mpir/analysis.hpp"
#include "mpir/cli/experiment.hpp"
#include "mpir/montecarlo.hpp"
#include "mpir/spectral.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace mpir::cli
{

struct PsdResult
{
    std::string plan;
    SpectralDensity analytic;
    SpectralDensity empirical;
    double band = 0.0; // one-sided bandwidth holding psd.power_fraction of the analytic power
    double mismatch = 0.0;
};

struct TheoryCurve
{
    std::string plan;
    std::vector<BepAverage> points; // one per sweep value
};

struct SimCurve
{
    std::string plan;
    std::vector<BerEstimate> points;
};

struct CheckResult
{
    std::string name;
    double measured = 0.0;
    double limit = 0.0;
    bool pass = false;
    std::string detail;
};

std::vector<PsdResult> compute_psd(const ExperimentConfig &config, int threads = 0);
std::vector<TheoryCurve> compute_bep(const ExperimentConfig &config, int threads = 0);
std::vector<SimCurve> compute_sim(const ExperimentConfig &config, int threads = 0, std::ostream *progress = nullptr);

// Individual oracle checks. Each compares an analytic quantity with an independent
// estimate at the fixed tolerance of its check.
CheckResult check_channel_energy(const ExperimentConfig &config, double scale, std::uint32_t sub);
std::vector<CheckResult> check_mai(const ExperimentConfig &config, std::size_t plan_index, int threads = 0);
CheckResult check_noise(const ExperimentConfig &config, std::size_t plan_index, int threads = 0);
CheckResult check_reduction(const ExperimentConfig &config);

// All checks: PSD mismatch per plan, channel energy at unit and interferer power, MAI and
// noise variance per plan, and the single-type reduction identity.
std::vector<CheckResult> run_validation(const ExperimentConfig &config, int threads = 0);

// Each command writes <out>/<plan>/<name>.csv for every pulse plan. Returns the process
// exit status.
int cmd_psd(const ExperimentConfig &config, const std::filesystem::path &out, int threads, std::ostream &log);
int cmd_bep(const ExperimentConfig &config, const std::filesystem::path &out, int threads, std::ostream &log);
int cmd_sim(const ExperimentConfig &config, const std::filesystem::path &out, int threads, std::ostream &log);
int cmd_validate(const ExperimentConfig &config, int threads, std::ostream &log);

// Argument parsing and dispatch for the uwbsim executable.
int run_cli(int argc, char **argv, std::ostream &out, std::ostream &err);

} // namespace mpir::cli
