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

#include "mpir/pulses.hpp"

#include "fft.hpp"
#include "mpir/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mpir
{

double Pulse::energy() const noexcept
{
    double e = 0.0;
    for (double s : samples)
        e += s * s;
    return e * dt;
}

double Pulse::support() const noexcept
{
    return samples.empty() ? 0.0 : static_cast<double>(samples.size() - 1) * dt;
}

double Waveform::energy() const noexcept
{
    double e = 0.0;
    for (double s : samples)
        e += s * s;
    return e * dt;
}

double Waveform::at(std::ptrdiff_t n) const noexcept
{
    if (n < start || n >= end())
        return 0.0;
    return samples[static_cast<std::size_t>(n - start)];
}

std::ptrdiff_t CorrelationFunction::first_index() const noexcept
{
    return static_cast<std::ptrdiff_t>(std::llround(lag0 / lag_step));
}

double CorrelationFunction::at_index(std::ptrdiff_t n) const noexcept
{
    const std::ptrdiff_t i = n - first_index();
    if (i < 0 || i >= static_cast<std::ptrdiff_t>(values.size()))
        return 0.0;
    return values[static_cast<std::size_t>(i)];
}

double CorrelationFunction::operator()(double lag) const noexcept
{
    if (values.empty())
        return 0.0;
    const double pos = (lag - lag0) / lag_step;
    const double last = static_cast<double>(values.size() - 1);
    constexpr double snap = 1e-9;
    if (pos < -snap || pos > last + snap)
        return 0.0;
    const double nearest = std::round(pos);
    if (std::abs(pos - nearest) < snap)
        return values[static_cast<std::size_t>(std::clamp(nearest, 0.0, last))];
    const auto i = static_cast<std::size_t>(std::floor(pos));
    const double w = pos - static_cast<double>(i);
    return (1.0 - w) * values[i] + w * values[i + 1];
}

void check_pulse(const Pulse &p)
{
    if (p.samples.size() < 2)
        throw Error(Errc::invalid_parameter, "pulse needs at least two samples");
    if (!(p.dt > 0.0) || !std::isfinite(p.dt))
        throw Error(Errc::invalid_parameter, "pulse sample interval must be positive");
    for (double s : p.samples)
        if (!std::isfinite(s))
            throw Error(Errc::invalid_parameter, "pulse samples must be finite");
}

Pulse normalize_energy(const Pulse &p)
{
    check_pulse(p);
    const double e = p.energy();
    if (!(e > 0.0))
        throw Error(Errc::degenerate_input, "cannot normalize a zero-energy pulse");
    Pulse out = p;
    const double scale = 1.0 / std::sqrt(e);
    for (double &s : out.samples)
        s *= scale;
    // Second pass on the rescaled samples.
    const double e2 = out.energy();
    if (e2 != 1.0)
    {
        const double fix = 1.0 / std::sqrt(e2);
        for (double &s : out.samples)
            s *= fix;
    }
    return out;
}

Pulse make_mhp(int order, double tau_p, double dt)
{
    if (order < 0 || order > 10)
        throw Error(Errc::invalid_parameter, "MHP order must be in [0, 10]");
    if (!(tau_p > 0.0) || !(dt > 0.0))
        throw Error(Errc::invalid_parameter, "MHP width and sample interval must be positive");
    if (dt > tau_p / 2.0)
        throw Error(Errc::resolution, "sample interval too coarse for the pulse width (need dt <= tau_p/2)");

    // He_n(x) e^{-x^2/4} is negligible (< 1e-30 of peak) beyond |x| = 20 for n <= 10.
    const auto half = static_cast<std::ptrdiff_t>(std::ceil(20.0 * tau_p / dt));
    std::vector<double> h(static_cast<std::size_t>(2 * half + 1));
    const double scale = std::pow(2.0, -0.5 * order);
    for (std::ptrdiff_t i = -half; i <= half; ++i)
    {
        const double x = static_cast<double>(i) * dt / tau_p;
        // Probabilists' Hermite from the physicists' one: He_n(x) = 2^{-n/2} H_n(x/sqrt 2).
        const double he = scale * std::hermite(static_cast<unsigned>(order), x / std::numbers::sqrt2);
        h[static_cast<std::size_t>(i + half)] = he * std::exp(-x * x / 4.0);
    }

    double peak = 0.0;
    for (double v : h)
        peak = std::max(peak, std::abs(v));
    const double floor = 1e-6 * peak;
    std::ptrdiff_t reach = 0;
    for (std::ptrdiff_t i = -half; i <= half; ++i)
        if (std::abs(h[static_cast<std::size_t>(i + half)]) >= floor)
            reach = std::max(reach, std::abs(i));

    Pulse p;
    p.dt = dt;
    p.t0 = -static_cast<double>(reach) * dt;
    p.samples.assign(h.begin() + (half - reach), h.begin() + (half + reach + 1));
    p.label = "mhp" + std::to_string(order);
    return normalize_energy(p);
}

std::vector<double> correlate_direct(std::span<const double> a, std::span<const double> b)
{
    if (a.empty() || b.empty())
        return {};
    const auto na = static_cast<std::ptrdiff_t>(a.size());
    const auto nb = static_cast<std::ptrdiff_t>(b.size());
    std::vector<double> c(static_cast<std::size_t>(na + nb - 1), 0.0);
    for (std::ptrdiff_t s = -(na - 1); s <= nb - 1; ++s)
    {
        const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, -s);
        const std::ptrdiff_t hi = std::min(na - 1, nb - 1 - s);
        double acc = 0.0;
        for (std::ptrdiff_t i = lo; i <= hi; ++i)
            acc += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(i + s)];
        c[static_cast<std::size_t>(s + na - 1)] = acc;
    }
    return c;
}

CorrelationFunction cross_correlation(const Pulse &a, const Pulse &b)
{
    check_pulse(a);
    check_pulse(b);
    if (std::abs(a.dt - b.dt) > 1e-12 * a.dt)
        throw Error(Errc::grid_mismatch, "cross_correlation needs pulses on a common sample interval");
    CorrelationFunction phi;
    phi.lag_step = a.dt;
    phi.lag0 = b.t0 - a.t0 - static_cast<double>(a.size() - 1) * a.dt;
    phi.values = correlate_direct(a.samples, b.samples);
    for (double &v : phi.values)
        v *= a.dt;
    return phi;
}

std::vector<double> frequency_grid(std::size_t n, double dt)
{
    std::vector<double> f(n);
    const double df = 1.0 / (static_cast<double>(n) * dt);
    const auto shift = static_cast<std::ptrdiff_t>(n / 2);
    for (std::size_t i = 0; i < n; ++i)
        f[i] = static_cast<double>(static_cast<std::ptrdiff_t>(i) - shift) * df;
    return f;
}

std::vector<std::complex<double>> pulse_transform(const Pulse &p, std::size_t n_freq)
{
    check_pulse(p);
    if (n_freq < p.size())
        throw Error(Errc::invalid_parameter, "n_freq must be at least the pulse length");
    const auto half = fft::forward_real(p.samples, n_freq);
    const auto freqs = frequency_grid(n_freq, p.dt);
    const auto shift = static_cast<std::ptrdiff_t>(n_freq / 2);
    std::vector<std::complex<double>> out(n_freq);
    for (std::size_t i = 0; i < n_freq; ++i)
    {
        const std::ptrdiff_t k = static_cast<std::ptrdiff_t>(i) - shift;
        const auto bin = static_cast<std::size_t>(std::abs(k));
        const std::complex<double> x = k >= 0 ? half[bin] : std::conj(half[bin]);
        const double phase = -2.0 * std::numbers::pi * freqs[i] * p.t0;
        out[i] = p.dt * x * std::polar(1.0, phase);
    }
    return out;
}

Spectrum pulse_spectrum(const Pulse &p, std::size_t n_freq)
{
    const auto transform = pulse_transform(p, n_freq);
    Spectrum s;
    s.freqs = frequency_grid(n_freq, p.dt);
    s.magnitude_sq.resize(n_freq);
    for (std::size_t i = 0; i < n_freq; ++i)
        s.magnitude_sq[i] = std::norm(transform[i]);
    return s;
}

Waveform to_waveform(const Pulse &p)
{
    check_pulse(p);
    const double pos = p.t0 / p.dt;
    const double idx = std::round(pos);
    if (std::abs(pos - idx) > 1e-6)
        throw Error(Errc::grid_mismatch, "pulse origin offset is not a whole number of samples");
    return Waveform{p.samples, p.dt, static_cast<std::ptrdiff_t>(idx)};
}

} // namespace mpir
