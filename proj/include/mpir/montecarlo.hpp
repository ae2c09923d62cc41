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
#include "mpir/pulses.hpp"
#include "mpir/scenario.hpp"
#include "mpir/system_config.hpp"
#include "mpir/transceiver.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace mpir
{

struct StopRule
{
    std::uint64_t max_bits = 1'000'000;
    std::uint64_t min_errors = 50;
};

// Realizations run in fixed batches; a point is finalized at the first batch boundary
// where at least min_realizations have run and it has min_errors errors, or where it has
// reached max_bits. Batch composition never depends on the worker count.
struct TrialPlan
{
    std::uint64_t master_seed = 1;
    std::size_t min_realizations = 1;
    std::size_t bits_per_realization = 500;
    StopRule stop;
    std::size_t batch_size = 8;

    void validate() const;
};

struct BerEstimate
{
    std::uint64_t errors = 0;
    std::uint64_t bits = 0;
    double ber = 0.0;
    double ci95 = 0.0;   // Wilson interval half-width
    bool capped = false; // stopped by max_bits before reaching min_errors
};

struct WilsonInterval
{
    double centre = 0.0;
    double half_width = 0.0;
    bool contains(double p) const noexcept { return p >= centre - half_width && p <= centre + half_width; }
};

WilsonInterval wilson_interval(std::uint64_t errors, std::uint64_t bits, double z = 1.959963984540054);

using PointCallback = std::function<void(std::size_t point, const BerEstimate &)>;

// Waveform-level BER at each noise level of `noise_sigmas` (config.noise_sigma is ignored).
// All points share the same channel, code, bit and unit-noise realizations; the received
// signal at level sigma is signal + sigma * unit_noise and the correlator is linear, so each
// point is computed from the two correlator outputs.
std::vector<BerEstimate> run_ber_sweep(const SystemConfig &config, std::span<const Pulse> pulses,
                                       const ChannelParams &params, const CombinerSpec &combiner,
                                       const TrialPlan &plan, std::span<const double> noise_sigmas,
                                       int threads = 0, const PointCallback &on_point = {});

// Single point at config.noise_sigma.
BerEstimate run_ber(const SystemConfig &config, std::span<const Pulse> pulses, const ChannelParams &params,
                    const CombinerSpec &combiner, const TrialPlan &plan, int threads = 0);

struct MomentEstimate
{
    double mean = 0.0;
    double variance = 0.0;
    double variance_stderr = 0.0;
    std::uint64_t samples = 0;
};

// Brute-force variance of M_hat_j^(k): the interferer's frames around desired frame j are
// laid on the grid with random TH chips, polarities, bits and a uniform asynchronism in
// [0, T_s), and correlated sample by sample against the desired template frame j.
MomentEstimate estimate_mai_variance(const SystemConfig &config, std::span<const Pulse> pulses,
                                     const ChannelRealization &desired, const ChannelRealization &interferer,
                                     const CombinerSpec &combiner, int frame, std::uint64_t n_samples,
                                     std::uint64_t seed, int threads = 0);

// Variance of the decision statistic when the received signal is white noise only.
MomentEstimate estimate_noise_variance(const SystemConfig &config, std::span<const Waveform> templates,
                                       std::uint64_t n_trials, std::uint64_t seed,
                                       NoiseConvention convention = NoiseConvention::continuous, int threads = 0);

} // namespace mpir
