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

#include "mpir/channel.hpp"
#include "mpir/montecarlo.hpp"
#include "mpir/pulses.hpp"
#include "mpir/scenario.hpp"
#include "mpir/system_config.hpp"
#include "mpir/transceiver.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace mpir::cli
{

inline constexpr int kConfigVersion = 1;

struct PulseSpec
{
    std::string type = "mhp";
    int order = 4;
    double tau_p = kDefaultTauP;
};

struct PulsePlan
{
    std::string name;
    std::vector<PulseSpec> pulses;
};

struct PsdSettings
{
    std::size_t symbols_per_segment = 1;
    std::size_t segments = 2000;
    double power_fraction = 0.99;
};

struct ValidateSettings
{
    std::size_t channel_draws = 100'000;
    std::size_t mai_pairs = 10;
    std::uint64_t mai_samples = 1'000'000;
    std::uint64_t noise_trials = 100'000;
    double noise_ebn0_db = 10.0;
    NoiseConvention noise_convention = NoiseConvention::continuous;
    std::size_t reduction_configs = 100;
};

// Everything an experiment needs, resolved from a JSON document. Times are given in
// nanoseconds in the file and held in seconds here.
struct ExperimentConfig
{
    std::uint64_t seed = 1;
    SystemConfig system;
    double dt = kDefaultDt;
    std::vector<PulsePlan> plans;
    ChannelParams channel;
    CombinerSpec combiner;
    std::vector<double> ebn0_db;
    TrialPlan trials;
    std::size_t theory_realizations = 500;
    PsdSettings psd;
    ValidateSettings validate;

    // Validates every module invariant that can be checked without running anything.
    void check() const;

    // System configuration for a plan, with pulse_types set from the plan.
    SystemConfig system_for(const PulsePlan &plan) const;
    std::vector<Pulse> pulses_for(const PulsePlan &plan) const;
};

// Built-in experiment: the two-user-class comparison with the standard parameters,
// single mhp4 against alternating mhp4/mhp5.
ExperimentConfig default_experiment();

// Parses a configuration document. Keys not present keep their defaults; unknown keys
// are rejected with Errc::usage.
ExperimentConfig parse_experiment(const nlohmann::json &doc);
ExperimentConfig load_experiment(const std::string &path);

// Full resolved form, suitable for embedding in output headers.
nlohmann::json to_json(const ExperimentConfig &config);

} // namespace mpir::cli
