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

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace mpir
{

// Uniformly sampled finite-support pulse. Sample i sits at time t0 + i*dt relative to the
// pulse-local origin.
struct Pulse
{
    std::vector<double> samples;
    double dt = 0.0;
    double t0 = 0.0;
    std::string label;

    std::size_t size() const noexcept { return samples.size(); }
    double energy() const noexcept;
    // Duration covered by the samples, (size-1)*dt.
    double support() const noexcept;
};

// Real waveform living on the global sample grid: sample i is at time (start + i)*dt.
// Used for channel composites, transmitted blocks, received signals and templates.
struct Waveform
{
    std::vector<double> samples;
    double dt = 0.0;
    std::ptrdiff_t start = 0;

    std::size_t size() const noexcept { return samples.size(); }
    bool empty() const noexcept { return samples.empty(); }
    std::ptrdiff_t end() const noexcept { return start + static_cast<std::ptrdiff_t>(samples.size()); }
    double t0() const noexcept { return static_cast<double>(start) * dt; }
    double energy() const noexcept;
    // Sample at global index n; zero outside the stored span.
    double at(std::ptrdiff_t n) const noexcept;
};

// phi(x) sampled at lags lag0 + n*lag_step.
struct CorrelationFunction
{
    std::vector<double> values;
    double lag_step = 0.0;
    double lag0 = 0.0;

    // Linear interpolation between grid points; exactly zero outside [lag0, last lag].
    double operator()(double lag) const noexcept;
    // Value at lag n*lag_step. Requires lag0 to sit on the lag grid.
    double at_index(std::ptrdiff_t n) const noexcept;
    std::ptrdiff_t first_index() const noexcept;
};

// |P(f)|^2 on a uniform two-sided grid, ascending from -n/2*df.
struct Spectrum
{
    std::vector<double> freqs;
    std::vector<double> magnitude_sq;

    double df() const noexcept { return freqs.size() > 1 ? freqs[1] - freqs[0] : 0.0; }
};

// Modified Hermite pulse He_n(t/tau_p) exp(-t^2/(4 tau_p^2)) sampled on a symmetric grid,
// truncated where |h| drops below 1e-6 of its peak, energy normalized.
// Requires order <= 10, tau_p > 0, 0 < dt <= tau_p/2.
Pulse make_mhp(int order, double tau_p, double dt);

// Defaults used across the library: tau_p = 0.05 ns on a 0.02 ns grid.
inline constexpr double kDefaultTauP = 0.05e-9;
inline constexpr double kDefaultDt = 0.02e-9;

Pulse normalize_energy(const Pulse &p);

// phi_ab(x) = int a(t - x) b(t) dt as the exact discrete sum dt * sum a[i] b[i + s].
// The lag grid covers the full overlap support.
CorrelationFunction cross_correlation(const Pulse &a, const Pulse &b);

// Continuous-time Fourier transform approximation dt * sum p[i] exp(-j 2 pi f (t0 + i dt))
// on the grid f = k / (n_freq dt), k = -n_freq/2 ... ceil(n_freq/2)-1.
std::vector<std::complex<double>> pulse_transform(const Pulse &p, std::size_t n_freq);
Spectrum pulse_spectrum(const Pulse &p, std::size_t n_freq);

// Direct O(na*nb) correlation of raw sample arrays, c[s + na - 1] = sum_i a[i] b[i + s].
std::vector<double> correlate_direct(std::span<const double> a, std::span<const double> b);

// Converts a pulse whose origin offset t0 is a whole number of samples to a grid waveform.
Waveform to_waveform(const Pulse &p);

// Signed frequency grid shared by the spectral routines.
std::vector<double> frequency_grid(std::size_t n, double dt);

void check_pulse(const Pulse &p);

} // namespace mpir
