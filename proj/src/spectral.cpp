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

#include "mpir/spectral.hpp"

#include "fft.hpp"
#include "mpir/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mpir
{

namespace
{

double check_pulse_set(std::span<const Pulse> pulses, const SystemConfig &config)
{
    config.validate();
    if (static_cast<int>(pulses.size()) != config.pulse_types)
        throw Error(Errc::config_mismatch, "pulse count does not match N_p");
    const double dt = pulses.front().dt;
    for (const auto &p : pulses)
    {
        check_pulse(p);
        if (std::abs(p.dt - dt) > 1e-12 * dt)
            throw Error(Errc::grid_mismatch, "pulses must share one sample interval");
    }
    return dt;
}

} // namespace

double SpectralDensity::total_power() const noexcept
{
    double s = 0.0;
    for (double v : psd)
        s += v;
    return s * df();
}

AvgAutocorrelation analytic_autocorrelation(std::span<const Pulse> pulses, const SystemConfig &config)
{
    const double dt = check_pulse_set(pulses, config);
    std::size_t longest = 0;
    for (const auto &p : pulses)
        longest = std::max(longest, p.size());
    const auto reach = static_cast<std::ptrdiff_t>(longest - 1);

    AvgAutocorrelation r;
    r.lags.resize(static_cast<std::size_t>(2 * reach + 1));
    r.values.assign(r.lags.size(), 0.0);
    for (std::ptrdiff_t n = -reach; n <= reach; ++n)
        r.lags[static_cast<std::size_t>(n + reach)] = static_cast<double>(n) * dt;

    const double scale = 1.0 / (config.pulse_types * config.frame_time() * config.frames_per_symbol);
    for (const auto &p : pulses)
    {
        const auto phi = cross_correlation(p, p);
        const std::ptrdiff_t first = phi.first_index();
        for (std::size_t i = 0; i < phi.values.size(); ++i)
            r.values[static_cast<std::size_t>(first + static_cast<std::ptrdiff_t>(i) + reach)] +=
                scale * phi.values[i];
    }
    return r;
}

SpectralDensity analytic_psd(std::span<const Pulse> pulses, const SystemConfig &config, std::size_t n_freq)
{
    const double dt = check_pulse_set(pulses, config);
    SpectralDensity out;
    out.freqs = frequency_grid(n_freq, dt);
    out.psd.assign(n_freq, 0.0);
    const double scale = 1.0 / (config.pulse_types * config.symbol_time());
    for (const auto &p : pulses)
    {
        const auto s = pulse_spectrum(p, n_freq);
        for (std::size_t i = 0; i < n_freq; ++i)
            out.psd[i] += scale * s.magnitude_sq[i];
    }
    return out;
}

SpectralDensity empirical_psd(const Waveform &signal, std::size_t segment_len, std::size_t n_segments,
                              std::size_t symbol_len)
{
    if (segment_len == 0 || n_segments == 0 || symbol_len == 0)
        throw Error(Errc::invalid_parameter, "segment length, segment count and symbol length must be positive");
    if (segment_len % symbol_len != 0)
        throw Error(Errc::invalid_parameter, "segment length must be a whole number of symbols");
    if (signal.size() < segment_len * n_segments)
        throw Error(Errc::insufficient_data, "signal holds " + std::to_string(signal.size()) + " samples, need " +
                                                 std::to_string(segment_len * n_segments));
    if (!(signal.dt > 0.0))
        throw Error(Errc::invalid_parameter, "signal sample interval must be positive");

    const double dt = signal.dt;
    const double seg_duration = static_cast<double>(segment_len) * dt;
    const std::size_t nb = segment_len / 2 + 1;

    // Per-segment periodograms, then a fixed-order sum.
    std::vector<std::vector<double>> per_segment(n_segments);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t s = 0; s < static_cast<std::ptrdiff_t>(n_segments); ++s)
    {
        const std::span<const double> seg(signal.samples.data() + static_cast<std::size_t>(s) * segment_len,
                                          segment_len);
        const auto X = fft::forward_real(seg, segment_len);
        auto &pg = per_segment[static_cast<std::size_t>(s)];
        pg.resize(nb);
        for (std::size_t k = 0; k < nb; ++k)
            pg[k] = std::norm(X[k]) * dt * dt / seg_duration;
    }
    std::vector<double> half(nb, 0.0);
    for (const auto &pg : per_segment)
        for (std::size_t k = 0; k < nb; ++k)
            half[k] += pg[k];
    for (double &v : half)
        v /= static_cast<double>(n_segments);

    SpectralDensity out;
    out.freqs = frequency_grid(segment_len, dt);
    out.psd.resize(segment_len);
    const auto shift = static_cast<std::ptrdiff_t>(segment_len / 2);
    for (std::size_t i = 0; i < segment_len; ++i)
        out.psd[i] = half[static_cast<std::size_t>(std::abs(static_cast<std::ptrdiff_t>(i) - shift))];
    return out;
}

double psd_mismatch(const SpectralDensity &a, const SpectralDensity &b, std::pair<double, double> band)
{
    if (a.freqs.size() != b.freqs.size() || a.psd.size() != a.freqs.size() || b.psd.size() != b.freqs.size())
        throw Error(Errc::grid_mismatch, "spectral densities are on different grids");
    const double tol = 1e-9 * std::max(std::abs(a.df()), 1.0);
    for (std::size_t i = 0; i < a.freqs.size(); ++i)
        if (std::abs(a.freqs[i] - b.freqs[i]) > tol)
            throw Error(Errc::grid_mismatch, "spectral densities are on different grids");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.freqs.size(); ++i)
    {
        const double f = std::abs(a.freqs[i]);
        if (f < band.first || f > band.second)
            continue;
        const double d = a.psd[i] - b.psd[i];
        num += d * d;
        den += a.psd[i] * a.psd[i];
    }
    if (!(den > 0.0))
        throw Error(Errc::degenerate_input, "reference PSD has no power in the band");
    return std::sqrt(num / den);
}

double power_bandwidth(const SpectralDensity &s, double fraction)
{
    if (!(fraction > 0.0 && fraction <= 1.0))
        throw Error(Errc::invalid_parameter, "power fraction must be in (0, 1]");
    const double total = s.total_power();
    if (!(total > 0.0))
        throw Error(Errc::degenerate_input, "spectral density has no power");
    // Fold onto |f| and accumulate outwards from DC.
    std::vector<std::pair<double, double>> folded;
    folded.reserve(s.freqs.size());
    for (std::size_t i = 0; i < s.freqs.size(); ++i)
        folded.emplace_back(std::abs(s.freqs[i]), s.psd[i]);
    std::stable_sort(folded.begin(), folded.end(),
                     [](const auto &x, const auto &y) { return x.first < y.first; });
    double acc = 0.0;
    const double df = s.df();
    for (const auto &[f, v] : folded)
    {
        acc += v * df;
        if (acc >= fraction * total)
            return f;
    }
    return folded.back().first;
}

SpectralDensity psd_from_autocorrelation(const AvgAutocorrelation &r, double dt, std::size_t n_freq)
{
    if (r.values.size() > n_freq)
        throw Error(Errc::invalid_parameter, "n_freq shorter than the autocorrelation");
    SpectralDensity out;
    out.freqs = frequency_grid(n_freq, dt);
    out.psd.resize(n_freq);
    const auto X = fft::forward_real(r.values, n_freq);
    const auto shift = static_cast<std::ptrdiff_t>(n_freq / 2);
    for (std::size_t i = 0; i < n_freq; ++i)
    {
        const std::ptrdiff_t k = static_cast<std::ptrdiff_t>(i) - shift;
        const auto bin = static_cast<std::size_t>(std::abs(k));
        const std::complex<double> x = k >= 0 ? X[bin] : std::conj(X[bin]);
        const double phase = -2.0 * std::numbers::pi * out.freqs[i] * r.lags.front();
        out.psd[i] = (dt * x * std::polar(1.0, phase)).real();
    }
    return out;
}

} // namespace mpir
