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

#include "mpir/system_config.hpp"

#include "mpir/errors.hpp"

#include <cmath>
#include <string>

namespace mpir
{

void SystemConfig::validate() const
{
    if (users < 1 || frames_per_symbol < 1 || chips_per_frame < 1 || th_alphabet < 1 || pulse_types < 1)
        throw Error(Errc::invalid_parameter, "all counts must be >= 1");
    if (th_alphabet > chips_per_frame)
        throw Error(Errc::invalid_parameter, "TH alphabet N_h cannot exceed chips per frame N_c");
    if (frames_per_symbol % pulse_types != 0)
        throw Error(Errc::invalid_parameter, "frames per symbol must be a multiple of the pulse-type count");
    if (!(chip_time > 0.0) || !std::isfinite(chip_time))
        throw Error(Errc::invalid_parameter, "chip time must be positive");
    if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma))
        throw Error(Errc::invalid_parameter, "noise sigma must be finite and non-negative");
    if (!(interferer_power > 0.0) || !std::isfinite(interferer_power))
        throw Error(Errc::invalid_parameter, "interferer power ratio must be positive");
}

SampleGrid SampleGrid::make(const SystemConfig &config, double dt)
{
    config.validate();
    if (!(dt > 0.0))
        throw Error(Errc::invalid_parameter, "sample interval must be positive");
    const double per_chip = config.chip_time / dt;
    const double rounded = std::round(per_chip);
    if (rounded < 1.0 || std::abs(per_chip - rounded) > 1e-6 * per_chip)
        throw Error(Errc::grid_mismatch, "chip time must be a whole number of samples");
    SampleGrid g;
    g.dt = dt;
    g.chip = static_cast<std::ptrdiff_t>(rounded);
    g.frame = g.chip * config.chips_per_frame;
    g.symbol = g.frame * config.frames_per_symbol;
    return g;
}

void validate_pulses(const SystemConfig &config, std::span<const Pulse> pulses)
{
    config.validate();
    if (static_cast<int>(pulses.size()) != config.pulse_types)
        throw Error(Errc::config_mismatch, "expected " + std::to_string(config.pulse_types) + " pulse types, got " +
                                               std::to_string(pulses.size()));
    const double dt = pulses.front().dt;
    for (const auto &p : pulses)
    {
        check_pulse(p);
        if (std::abs(p.dt - dt) > 1e-12 * dt)
            throw Error(Errc::grid_mismatch, "all pulses must share one sample interval");
        if (!(p.energy() > 0.0))
            throw Error(Errc::degenerate_input, "pulse '" + p.label + "' has zero energy");
        if (std::abs(p.energy() - 1.0) > 1e-9)
            throw Error(Errc::config_mismatch, "pulse '" + p.label + "' is not energy normalized");
        if (p.support() > config.chip_time * (1.0 + 1e-9))
            throw Error(Errc::config_mismatch, "pulse '" + p.label + "' is longer than one chip");
        (void)to_waveform(p);
    }
    (void)SampleGrid::make(config, dt);
}

double noise_sigma_for_ebn0(double ebn0_db)
{
    return std::sqrt(0.5 / std::pow(10.0, ebn0_db / 10.0));
}

double ebn0_db_for_noise_sigma(double sigma)
{
    return -10.0 * std::log10(2.0 * sigma * sigma);
}

} // namespace mpir
