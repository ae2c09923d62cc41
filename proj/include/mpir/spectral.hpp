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
#include "mpir/system_config.hpp"

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace mpir
{

// Two-sided power spectral density on a uniform ascending grid (power per hertz).
struct SpectralDensity
{
    std::vector<double> freqs;
    std::vector<double> psd;

    double df() const noexcept { return freqs.size() > 1 ? freqs[1] - freqs[0] : 0.0; }
    double total_power() const noexcept;
};

// Time-average autocorrelation on a symmetric lag grid.
struct AvgAutocorrelation
{
    std::vector<double> lags;
    std::vector<double> values;
};

// (1/(N_p T_f N_f)) sum_l phi_{p_l p_l}(tau).
AvgAutocorrelation analytic_autocorrelation(std::span<const Pulse> pulses, const SystemConfig &config);

// (1/(N_p T_s)) sum_l |P_l(f)|^2 on the grid of spacing 1/(n_freq dt).
SpectralDensity analytic_psd(std::span<const Pulse> pulses, const SystemConfig &config, std::size_t n_freq);

// Averaged periodogram over n_segments consecutive, non-overlapping rectangular segments
// taken from the first sample of `signal`. Each periodogram is |dt * DFT|^2 / (segment_len dt).
// segment_len must be a multiple of symbol_len so every segment spans whole symbols.
SpectralDensity empirical_psd(const Waveform &signal, std::size_t segment_len, std::size_t n_segments,
                              std::size_t symbol_len = 1);

// Relative L2 distance sqrt(int (a-b)^2) / sqrt(int a^2) over |f| in band (a is the reference).
double psd_mismatch(const SpectralDensity &a, const SpectralDensity &b, std::pair<double, double> band);

// Smallest B such that the power in |f| <= B is at least `fraction` of the total.
double power_bandwidth(const SpectralDensity &s, double fraction);

// Discrete transform of an autocorrelation back to a PSD on the given grid size.
SpectralDensity psd_from_autocorrelation(const AvgAutocorrelation &r, double dt, std::size_t n_freq);

} // namespace mpir
