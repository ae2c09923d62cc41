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

#include <cstddef>
#include <span>

namespace mpir
{

// Scalar system parameters. Times are in seconds.
struct SystemConfig
{
    int users = 20;             // K
    int frames_per_symbol = 2;  // N_f
    int chips_per_frame = 40;   // N_c
    int th_alphabet = 3;        // N_h
    int pulse_types = 1;        // N_p
    double chip_time = 1e-9;    // T_c
    double noise_sigma = 0.0;   // sigma_n, amplitude of unit-PSD white noise
    double interferer_power = 5.0;

    double frame_time() const noexcept { return chips_per_frame * chip_time; }
    double symbol_time() const noexcept { return frames_per_symbol * frame_time(); }

    // Throws Errc::invalid_parameter on violated invariants.
    void validate() const;
};

// Integer sample counts of the simulation grid for a config.
struct SampleGrid
{
    double dt = 0.0;
    std::ptrdiff_t chip = 0;
    std::ptrdiff_t frame = 0;
    std::ptrdiff_t symbol = 0;

    static SampleGrid make(const SystemConfig &config, double dt);
};

// Pulse set compatibility: count equals N_p, common dt, unit energy, support within one
// chip, origin on the sample grid.
void validate_pulses(const SystemConfig &config, std::span<const Pulse> pulses);

// Eb/N0 bookkeeping: unit-energy pulses and unit mean channel energy give Eb = 1 and
// N0/2 = sigma_n^2.
double noise_sigma_for_ebn0(double ebn0_db);
double ebn0_db_for_noise_sigma(double sigma);

} // namespace mpir
