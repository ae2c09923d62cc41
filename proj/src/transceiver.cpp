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

#include "mpir/transceiver.hpp"

#include "mpir/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace mpir
{

namespace
{

void check_shapes(std::span<const Waveform> shapes, const SystemConfig &config)
{
    if (static_cast<int>(shapes.size()) != config.pulse_types)
        throw Error(Errc::config_mismatch, "expected one shape per pulse type");
    for (const auto &s : shapes)
        if (std::abs(s.dt - shapes.front().dt) > 1e-12 * shapes.front().dt || !(s.dt > 0.0))
            throw Error(Errc::grid_mismatch, "shapes must share one positive sample interval");
}

void add_shifted(Waveform &target, const Waveform &src, std::ptrdiff_t offset, double scale)
{
    const std::ptrdiff_t lo = std::max(target.start, src.start + offset);
    const std::ptrdiff_t hi = std::min(target.end(), src.end() + offset);
    if (lo >= hi || scale == 0.0)
        return;
    double *dst = target.samples.data() + (lo - target.start);
    const double *s = src.samples.data() + (lo - src.start - offset);
    const std::ptrdiff_t n = hi - lo;
    for (std::ptrdiff_t i = 0; i < n; ++i)
        dst[i] += scale * s[i];
}


} // namespace

CodeSequences generate_codes(const SystemConfig &config, std::size_t n_frames, CounterRng &rng)
{
    config.validate();
    if (n_frames == 0)
        throw Error(Errc::invalid_parameter, "need at least one frame");
    std::uniform_int_distribution<int> chip(0, config.th_alphabet - 1);
    std::bernoulli_distribution coin(0.5);
    CodeSequences c;
    c.th.resize(n_frames);
    c.polarity.resize(n_frames);
    for (std::size_t j = 0; j < n_frames; ++j)
    {
        c.th[j] = config.th_alphabet == 1 ? 0 : chip(rng);
        c.polarity[j] = coin(rng) ? 1 : -1;
    }
    return c;
}

std::vector<int> generate_bits(std::size_t n_bits, CounterRng &rng)
{
    std::bernoulli_distribution coin(0.5);
    std::vector<int> bits(n_bits);
    for (auto &b : bits)
        b = coin(rng) ? 1 : -1;
    return bits;
}

RakeCombiner select_combiner(const ChannelRealization &chan, CombiningScheme scheme, PathSelection selection)
{
    const auto L = chan.size();
    if (L == 0)
        throw Error(Errc::invalid_parameter, "empty channel realization");
    std::vector<bool> used(L, false);
    switch (selection.kind)
    {
    case PathSelection::Kind::all:
        std::fill(used.begin(), used.end(), true);
        break;
    case PathSelection::Kind::partial:
    case PathSelection::Kind::selective: {
        if (selection.count < 1 || static_cast<std::size_t>(selection.count) > L)
            throw Error(Errc::invalid_parameter, "RAKE finger count must be in [1, L]");
        std::vector<std::size_t> order(L);
        for (std::size_t l = 0; l < L; ++l)
            order[l] = l;
        if (selection.kind == PathSelection::Kind::selective)
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                return std::abs(chan.gains[a]) > std::abs(chan.gains[b]);
            });
        for (int m = 0; m < selection.count; ++m)
            used[order[static_cast<std::size_t>(m)]] = true;
        break;
    }
    }

    RakeCombiner rc;
    rc.scheme = scheme;
    rc.selection = selection;
    rc.beta.assign(L, 0.0);
    for (std::size_t l = 0; l < L; ++l)
    {
        if (!used[l])
            continue;
        const double a = chan.gains[l];
        rc.beta[l] = scheme == CombiningScheme::mrc ? a : (a > 0.0 ? 1.0 : (a < 0.0 ? -1.0 : 0.0));
    }
    return rc;
}

std::ptrdiff_t leading_extent(std::span<const Waveform> shapes)
{
    std::ptrdiff_t lo = 0;
    bool any = false;
    for (const auto &s : shapes)
    {
        if (s.empty())
            continue;
        lo = any ? std::min(lo, s.start) : s.start;
        any = true;
    }
    return -lo;
}

void superimpose_block(Waveform &target, const SystemConfig &config, std::span<const Waveform> shapes,
                       std::span<const int> bits, const CodeSequences &codes, std::ptrdiff_t origin)
{
    check_shapes(shapes, config);
    const auto grid = SampleGrid::make(config, shapes.front().dt);
    const std::size_t n_frames = bits.size() * static_cast<std::size_t>(config.frames_per_symbol);
    if (codes.frames() != n_frames || codes.polarity.size() != n_frames)
        throw Error(Errc::invalid_parameter, "code sequences must cover every frame of the block");
    const double amp = 1.0 / std::sqrt(static_cast<double>(config.frames_per_symbol));
    const auto Np = static_cast<std::size_t>(config.pulse_types);
    const auto Nf = static_cast<std::size_t>(config.frames_per_symbol);
    for (std::size_t j = 0; j < n_frames; ++j)
    {
        const double sign = codes.polarity[j] * bits[j / Nf];
        const std::ptrdiff_t pos = origin + static_cast<std::ptrdiff_t>(j) * grid.frame + codes.th[j] * grid.chip;
        add_shifted(target, shapes[j % Np], pos, amp * sign);
    }
}

Waveform transmit_block(const SystemConfig &config, std::span<const Waveform> shapes, std::span<const int> bits,
                        const CodeSequences &codes)
{
    check_shapes(shapes, config);
    const auto grid = SampleGrid::make(config, shapes.front().dt);
    const std::ptrdiff_t lead = leading_extent(shapes);
    const std::ptrdiff_t last_chip = (config.th_alphabet - 1) * grid.chip;
    for (const auto &s : shapes)
        if (!s.empty() && last_chip + s.end() > grid.frame - lead)
            throw Error(Errc::infeasible_geometry, "shape at the last TH position spills into the next frame");
    for (int b : bits)
        if (b != 1 && b != -1)
            throw Error(Errc::invalid_parameter, "bits must be +1 or -1");

    Waveform out;
    out.dt = shapes.front().dt;
    out.start = -lead;
    out.samples.assign(bits.size() * static_cast<std::size_t>(grid.symbol), 0.0);
    superimpose_block(out, config, shapes, bits, codes, 0);
    return out;
}

Waveform transmit_block(const SystemConfig &config, std::span<const Pulse> pulses, std::span<const int> bits,
                        const CodeSequences &codes)
{
    std::vector<Waveform> shapes;
    shapes.reserve(pulses.size());
    for (const auto &p : pulses)
        shapes.push_back(to_waveform(p));
    return transmit_block(config, shapes, bits, codes);
}

Waveform white_noise(std::ptrdiff_t start, std::size_t length, double dt, double sigma, CounterRng &rng,
                     NoiseConvention convention)
{
    if (!(dt > 0.0) || !(sigma >= 0.0))
        throw Error(Errc::invalid_parameter, "noise needs dt > 0 and sigma >= 0");
    Waveform w;
    w.dt = dt;
    w.start = start;
    w.samples.resize(length);
    const double sd = convention == NoiseConvention::continuous ? sigma / std::sqrt(dt) : sigma;
    std::normal_distribution<double> normal(0.0, 1.0);
    for (auto &s : w.samples)
        s = sd * normal(rng);
    return w;
}

Waveform compose_received(const SystemConfig &config, std::span<const Waveform> blocks,
                          std::span<const double> offsets, CounterRng &rng)
{
    config.validate();
    if (blocks.empty() || blocks.size() != offsets.size())
        throw Error(Errc::invalid_parameter, "one offset per user block is required");
    if (offsets[0] != 0.0)
        throw Error(Errc::invalid_parameter, "the desired user's offset must be zero");
    const double Ts = config.symbol_time();
    for (double o : offsets)
        if (!(o >= 0.0 && o < Ts))
            throw Error(Errc::invalid_parameter, "user offsets must lie in [0, T_s)");
    const double dt = blocks[0].dt;
    for (const auto &b : blocks)
        if (std::abs(b.dt - dt) > 1e-12 * dt)
            throw Error(Errc::grid_mismatch, "user blocks must share one sample interval");

    Waveform r{blocks[0].samples, dt, blocks[0].start};
    for (std::size_t k = 1; k < blocks.size(); ++k)
        add_shifted(r, blocks[k], static_cast<std::ptrdiff_t>(std::llround(offsets[k] / dt)), 1.0);
    if (config.noise_sigma > 0.0)
    {
        const auto n = white_noise(r.start, r.size(), dt, config.noise_sigma, rng);
        for (std::size_t i = 0; i < r.size(); ++i)
            r.samples[i] += n.samples[i];
    }
    return r;
}

Waveform rake_template(const SystemConfig &config, const CodeSequences &codes, std::span<const Waveform> v,
                       std::size_t bit_index)
{
    check_shapes(v, config);
    const auto grid = SampleGrid::make(config, v.front().dt);
    const auto Nf = static_cast<std::size_t>(config.frames_per_symbol);
    const auto Np = static_cast<std::size_t>(config.pulse_types);
    if ((bit_index + 1) * Nf > codes.frames())
        throw Error(Errc::invalid_parameter, "bit index beyond the code sequences");

    Waveform t;
    t.dt = v.front().dt;
    t.start = static_cast<std::ptrdiff_t>(bit_index) * grid.symbol - leading_extent(v);
    t.samples.assign(static_cast<std::size_t>(grid.symbol), 0.0);
    for (std::size_t j = bit_index * Nf; j < (bit_index + 1) * Nf; ++j)
    {
        const std::ptrdiff_t pos = static_cast<std::ptrdiff_t>(j) * grid.frame + codes.th[j] * grid.chip;
        add_shifted(t, v[j % Np], pos, static_cast<double>(codes.polarity[j]));
    }
    return t;
}

double decision_statistic(const Waveform &received, const Waveform &tmpl)
{
    if (!(received.dt > 0.0) || std::abs(received.dt - tmpl.dt) > 1e-12 * received.dt)
        throw Error(Errc::grid_mismatch, "received signal and template use different sample intervals");
    const std::ptrdiff_t lo = std::max(received.start, tmpl.start);
    const std::ptrdiff_t hi = std::min(received.end(), tmpl.end());
    double acc = 0.0;
    for (std::ptrdiff_t n = lo; n < hi; ++n)
        acc += received.samples[static_cast<std::size_t>(n - received.start)] *
               tmpl.samples[static_cast<std::size_t>(n - tmpl.start)];
    return acc * received.dt;
}

} // namespace mpir
