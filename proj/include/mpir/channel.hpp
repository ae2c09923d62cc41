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

#include "mpir/pulses.hpp"
#include "mpir/rng.hpp"
#include "mpir/system_config.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace mpir
{

// Exponentially decaying, log-normally fading tap amplitudes with random signs and
// exponential inter-arrival times.
struct ChannelParams
{
    int paths = 20;                  // L
    double decay = 0.5;              // lambda, per path index
    double sigma2 = 1.0;             // log-normal variance of |alpha_l|
    double mean_interarrival = 1.5e-9;
    double power_scale = 1.0;        // mean received energy multiplier

    void validate() const;
    // Omega_0 = (1 - e^-lambda) / (1 - e^-lambda L); makes sum_l E{alpha_l^2} = 1.
    double omega0() const;
};

// mu_l = 0.5 [ln Omega_0 - lambda l - 2 sigma^2].
double mean_log_gain(const ChannelParams &params, int l);

struct ChannelRealization
{
    std::vector<double> gains;   // signed alpha_l
    std::vector<double> delays;  // tau_l in seconds, tau_0 = 0, strictly increasing

    std::size_t size() const noexcept { return gains.size(); }
    double energy() const noexcept;
};

struct RejectionStats
{
    std::uint64_t attempts = 0;
    std::uint64_t accepted = 0;
    double acceptance_rate() const noexcept
    {
        return attempts ? static_cast<double>(accepted) / static_cast<double>(attempts) : 0.0;
    }
};

// One draw from the statistical model with no delay-spread constraint.
ChannelRealization sample_channel_unconstrained(const ChannelParams &params, CounterRng &rng);

// Draws realizations until the last arrival satisfies tau_{L-1} < T_f - N_h T_c (no
// inter-frame interference). Throws Errc::infeasible_geometry after max_attempts rejects.
ChannelRealization sample_channel(const ChannelParams &params, const SystemConfig &config, CounterRng &rng,
                                  RejectionStats *stats = nullptr, int max_attempts = 1000);

// sum_l weights[l] pulse(t - tau_l) with every tau_l snapped to the nearest grid sample,
// trimmed to its nonzero extent.
Waveform composite_waveform(const Pulse &pulse, const ChannelRealization &chan, std::span<const double> weights);

// Text form: "# index,gain,delay_ns" header then one row per tap.
void write_channel_csv(std::ostream &os, const ChannelRealization &chan);
ChannelRealization read_channel_csv(std::istream &is);

} // namespace mpir
