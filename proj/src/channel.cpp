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

#include "mpir/channel.hpp"

#include "mpir/errors.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

namespace mpir
{

void ChannelParams::validate() const
{
    if (paths < 1)
        throw Error(Errc::invalid_parameter, "channel needs at least one path");
    if (!(decay > 0.0) || !std::isfinite(decay))
        throw Error(Errc::invalid_parameter, "decay rate lambda must be positive");
    if (!(sigma2 >= 0.0) || !std::isfinite(sigma2))
        throw Error(Errc::invalid_parameter, "log-normal variance must be non-negative");
    if (!(mean_interarrival > 0.0) || !std::isfinite(mean_interarrival))
        throw Error(Errc::invalid_parameter, "mean inter-arrival time must be positive");
    if (!(power_scale > 0.0) || !std::isfinite(power_scale))
        throw Error(Errc::invalid_parameter, "power scale must be positive");
}

double ChannelParams::omega0() const
{
    return -std::expm1(-decay) / -std::expm1(-decay * paths);
}

double mean_log_gain(const ChannelParams &params, int l)
{
    params.validate();
    if (l < 0 || l >= params.paths)
        throw Error(Errc::invalid_parameter, "path index out of range");
    return 0.5 * (std::log(params.omega0()) - params.decay * l - 2.0 * params.sigma2);
}

double ChannelRealization::energy() const noexcept
{
    double e = 0.0;
    for (double g : gains)
        e += g * g;
    return e;
}

ChannelRealization sample_channel_unconstrained(const ChannelParams &params, CounterRng &rng)
{
    params.validate();
    const auto L = static_cast<std::size_t>(params.paths);
    const double amp = std::sqrt(params.power_scale);
    const double sigma = std::sqrt(params.sigma2);
    std::normal_distribution<double> normal;
    std::exponential_distribution<double> arrival(1.0 / params.mean_interarrival);
    std::bernoulli_distribution coin(0.5);

    ChannelRealization c;
    c.gains.resize(L);
    c.delays.resize(L);
    double t = 0.0;
    for (std::size_t l = 0; l < L; ++l)
    {
        const double mu = mean_log_gain(params, static_cast<int>(l));
        const double magnitude = std::exp(mu + sigma * normal(rng));
        c.gains[l] = amp * (coin(rng) ? magnitude : -magnitude);
        if (l > 0)
        {
            double gap = arrival(rng);
            // Redraw zero gaps to keep delays strictly increasing.
            while (!(gap > 0.0))
                gap = arrival(rng);
            t += gap;
        }
        c.delays[l] = t;
    }
    return c;
}

ChannelRealization sample_channel(const ChannelParams &params, const SystemConfig &config, CounterRng &rng,
                                  RejectionStats *stats, int max_attempts)
{
    config.validate();
    const double limit = config.frame_time() - config.th_alphabet * config.chip_time;
    for (int attempt = 0; attempt < max_attempts; ++attempt)
    {
        auto c = sample_channel_unconstrained(params, rng);
        if (stats)
            ++stats->attempts;
        if (c.delays.back() < limit)
        {
            if (stats)
                ++stats->accepted;
            return c;
        }
    }
    throw Error(Errc::infeasible_geometry, "no channel realization met the no-IFI delay bound after " +
                                               std::to_string(max_attempts) + " attempts");
}

Waveform composite_waveform(const Pulse &pulse, const ChannelRealization &chan, std::span<const double> weights)
{
    const Waveform base = to_waveform(pulse);
    if (weights.size() != chan.size() || chan.delays.size() != chan.gains.size())
        throw Error(Errc::invalid_parameter, "one weight per channel path is required");
    if (chan.size() == 0)
        return Waveform{{}, pulse.dt, base.start};

    std::vector<std::ptrdiff_t> shift(chan.size());
    for (std::size_t l = 0; l < chan.size(); ++l)
        shift[l] = static_cast<std::ptrdiff_t>(std::llround(chan.delays[l] / pulse.dt));
    const std::ptrdiff_t lo = shift.front();
    std::ptrdiff_t hi = lo;
    for (auto s : shift)
        hi = std::max(hi, s);

    Waveform out;
    out.dt = pulse.dt;
    out.start = base.start + lo;
    out.samples.assign(base.size() + static_cast<std::size_t>(hi - lo), 0.0);
    for (std::size_t l = 0; l < chan.size(); ++l)
    {
        const double w = weights[l];
        if (w == 0.0)
            continue;
        double *dst = out.samples.data() + (shift[l] - lo);
        for (std::size_t i = 0; i < base.size(); ++i)
            dst[i] += w * base.samples[i];
    }

    std::size_t first = 0, last = out.samples.size();
    while (first < last && out.samples[first] == 0.0)
        ++first;
    while (last > first && out.samples[last - 1] == 0.0)
        --last;
    if (first == last)
        return Waveform{{}, pulse.dt, out.start};
    out.samples = std::vector<double>(out.samples.begin() + static_cast<std::ptrdiff_t>(first),
                                      out.samples.begin() + static_cast<std::ptrdiff_t>(last));
    out.start += static_cast<std::ptrdiff_t>(first);
    return out;
}

void write_channel_csv(std::ostream &os, const ChannelRealization &chan)
{
    os << "# index,gain,delay_ns\n";
    char line[128];
    for (std::size_t l = 0; l < chan.size(); ++l)
    {
        std::snprintf(line, sizeof line, "%zu,%.17g,%.17g\n", l, chan.gains[l], chan.delays[l] * 1e9);
        os << line;
    }
}

ChannelRealization read_channel_csv(std::istream &is)
{
    ChannelRealization c;
    std::string line;
    while (std::getline(is, line))
    {
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream row(line);
        std::string idx, gain, delay;
        if (!std::getline(row, idx, ',') || !std::getline(row, gain, ',') || !std::getline(row, delay))
            throw Error(Errc::io, "malformed channel row: " + line);
        try
        {
            if (std::stoul(idx) != c.size())
                throw Error(Errc::io, "channel rows out of order at: " + line);
            c.gains.push_back(std::stod(gain));
            c.delays.push_back(std::stod(delay) * 1e-9);
        }
        catch (const std::logic_error &)
        {
            throw Error(Errc::io, "malformed channel row: " + line);
        }
    }
    for (std::size_t l = 1; l < c.size(); ++l)
        if (!(c.delays[l] > c.delays[l - 1]))
            throw Error(Errc::io, "channel delays must be strictly increasing");
    return c;
}

} // namespace mpir
