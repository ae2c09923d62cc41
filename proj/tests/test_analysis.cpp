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

#include "mpir/analysis.hpp"
#include "mpir/errors.hpp"
#include "mpir/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace mpir;

namespace
{

Waveform random_waveform(CounterRng &rng, std::size_t n, std::ptrdiff_t start)
{
    std::normal_distribution<double> g;
    Waveform w{std::vector<double>(n), kDefaultDt, start};
    for (auto &s : w.samples)
        s = g(rng);
    return w;
}

struct Pair
{
    std::vector<Waveform> u, v;
};

Pair channel_pair(const SystemConfig &c, std::uint64_t index, double dt = kDefaultDt)
{
    ChannelParams params;
    auto drng = make_rng(77, index, StreamRole::desired_channel);
    auto irng = make_rng(77, index, StreamRole::interferer_channel);
    const auto d = sample_channel(params, c, drng);
    const auto in = sample_channel(params, c, irng);
    Pair p;
    for (int j = 0; j < c.pulse_types; ++j)
    {
        const auto pulse = make_mhp(4 + j, kDefaultTauP, dt);
        p.u.push_back(composite_waveform(pulse, in, in.gains));
        p.v.push_back(composite_waveform(pulse, d, d.gains));
    }
    return p;
}

} // namespace

TEST_CASE("FFT correlation matches the direct sum")
{
    auto rng = make_rng(1, 0, StreamRole::generic);
    const auto u = random_waveform(rng, 301, -40);
    const auto v = random_waveform(rng, 517, 25);
    const auto phi = correlation_functional(u, v);
    for (std::ptrdiff_t n = phi.first_index() - 2; n < phi.first_index() + static_cast<std::ptrdiff_t>(phi.values.size()) + 2;
         n += 7)
        CHECK(phi.at_index(n) == doctest::Approx(correlation_at(u, v, n)).epsilon(1e-10).scale(1e-11));
}

TEST_CASE("Q function against high-precision values")
{
    // Frozen from 40-digit erfc(x/sqrt 2)/2.
    const std::vector<std::pair<double, double>> ref{{0.0, 0.5},
                                                     {0.5, 0.30853753872598689636},
                                                     {1.0, 0.15865525393145705141},
                                                     {2.0, 0.0227501319481792072},
                                                     {3.0, 0.0013498980316300945267},
                                                     {5.0, 2.8665157187919391167e-7},
                                                     {8.0, 6.2209605742717841235e-16}};
    for (const auto &[x, q] : ref)
        CHECK(std::abs(q_function(x) / q - 1.0) <= 1e-12);
    double prev = q_function(0.0);
    for (double x = 0.01; x <= 8.0; x += 0.01)
    {
        const double q = q_function(x);
        REQUIRE(q < prev);
        prev = q;
    }
    CHECK(q_function(-1.0) == doctest::Approx(1.0 - q_function(1.0)).epsilon(1e-15));
}

TEST_CASE("single-type MAI variance reduces to the classical expression")
{
    auto c = SystemConfig{};
    c.pulse_types = 1;
    for (std::uint64_t i = 0; i < 10; ++i)
    {
        c.frames_per_symbol = 1 + static_cast<int>(i % 3);
        c.th_alphabet = 1 + static_cast<int>(i % 5);
        const auto p = channel_pair(c, i);
        const std::vector<std::vector<Waveform>> u_set{p.u};
        const auto multi = mai_variance_multi(u_set, p.v, c);
        const double classical = mai_variance_classical(p.u[0], p.v[0], c);
        CHECK(std::abs(multi.per_frame[0][0] / classical - 1.0) < 1e-12);
    }
}

TEST_CASE("MAI variance is quadratic in interferer amplitude and zero without interference")
{
    SystemConfig c;
    c.pulse_types = 2;
    auto p = channel_pair(c, 3);
    const std::vector<std::vector<Waveform>> one{p.u};
    const auto base = mai_variance_multi(one, p.v, c);
    auto doubled = p.u;
    for (auto &w : doubled)
        for (auto &s : w.samples)
            s *= 2.0;
    const std::vector<std::vector<Waveform>> two{doubled};
    CHECK(mai_variance_multi(two, p.v, c).total == doctest::Approx(4.0 * base.total).epsilon(1e-12));
    const std::vector<std::vector<Waveform>> silent{{Waveform{{}, kDefaultDt, 0}, Waveform{{}, kDefaultDt, 0}}};
    CHECK(mai_variance_multi(silent, p.v, c).total == 0.0);
}

TEST_CASE("MAI variance is stable under grid refinement")
{
    SystemConfig c;
    c.pulse_types = 2;
    // Delays on the coarse grid so both resolutions see the same channel.
    ChannelRealization d{{0.7, -0.5, 0.4, 0.2}, {0.0, 1.4e-9, 3.02e-9, 7.5e-9}};
    ChannelRealization in{{-0.9, 0.6, 0.3}, {0.0, 2.2e-9, 4.04e-9}};
    auto total = [&](double dt) {
        std::vector<Waveform> v;
        std::vector<std::vector<Waveform>> u(1);
        for (int j = 0; j < 2; ++j)
        {
            const auto pulse = make_mhp(4 + j, kDefaultTauP, dt);
            v.push_back(composite_waveform(pulse, d, d.gains));
            u[0].push_back(composite_waveform(pulse, in, in.gains));
        }
        return mai_variance_multi(u, v, c).total;
    };
    CHECK(std::abs(total(kDefaultDt) / total(kDefaultDt / 2) - 1.0) < 0.002);
}

TEST_CASE("BEP is monotone in its terms")
{
    SystemConfig c;
    c.pulse_types = 2;
    c.noise_sigma = 0.3;
    auto rng = make_rng(4, 0, StreamRole::generic);
    std::uniform_real_distribution<double> u(0.1, 2.0);
    for (int i = 0; i < 100; ++i)
    {
        MaiVariance mai;
        mai.total = u(rng);
        const std::vector<double> corr{u(rng), u(rng)}, energy{u(rng), u(rng)};
        const double pe = bep_multi(corr, mai, energy, c).pe;
        const std::vector<double> more_signal{corr[0] * 1.1, corr[1]};
        CHECK(bep_multi(more_signal, mai, energy, c).pe < pe);
        MaiVariance more = mai;
        more.total *= 1.1;
        CHECK(bep_multi(corr, more, energy, c).pe > pe);
        const std::vector<double> more_energy{energy[0], energy[1] * 1.1};
        CHECK(bep_multi(corr, mai, more_energy, c).pe > pe);
    }
}

TEST_CASE("zero denominator is degenerate")
{
    SystemConfig c;
    MaiVariance mai;
    const std::vector<double> corr{1.0}, energy{1.0};
    try
    {
        bep_multi(corr, mai, energy, c);
        FAIL("expected degenerate input");
    }
    catch (const Error &e)
    {
        CHECK(e.code() == Errc::degenerate_input);
    }
}

TEST_CASE("signal term and waveform desired term agree")
{
    SystemConfig c;
    c.pulse_types = 2;
    c.frames_per_symbol = 4;
    const auto p = channel_pair(c, 5);
    std::vector<double> corr;
    for (int j = 0; j < 2; ++j)
        corr.push_back(correlation_at(p.v[static_cast<std::size_t>(j)], p.v[static_cast<std::size_t>(j)]));
    MaiVariance mai;
    mai.total = 1.0;
    const auto r = bep_multi(corr, mai, corr, c);
    CHECK(desired_term(p.v, p.v, c) == doctest::Approx(std::sqrt(4.0 / 2.0) * r.signal_term).epsilon(1e-12));
}

TEST_CASE("noise variance scales with sigma squared")
{
    SystemConfig c;
    c.pulse_types = 2;
    const auto p = channel_pair(c, 6);
    c.noise_sigma = 0.5;
    const double a = noise_variance(p.v, c);
    c.noise_sigma = 1.0;
    CHECK(noise_variance(p.v, c) == doctest::Approx(4.0 * a));
    c.noise_sigma = 0.0;
    CHECK(noise_variance(p.v, c) == 0.0);
}

TEST_CASE("ensemble BEP standard error shrinks with the ensemble size")
{
    SystemConfig c;
    c.users = 5;
    c.noise_sigma = noise_sigma_for_ebn0(10.0);
    const std::vector<Pulse> pulses{make_mhp(4, kDefaultTauP, kDefaultDt)};
    const auto small = bep_averaged(c, pulses, ChannelParams{}, CombinerSpec{}, 100, 1);
    const auto large = bep_averaged(c, pulses, ChannelParams{}, CombinerSpec{}, 200, 1);
    const double ratio = large.pe_stderr / small.pe_stderr;
    CHECK(ratio > 0.5);
    CHECK(ratio < 0.95);
    const auto single = bep_averaged(c, pulses, ChannelParams{}, CombinerSpec{}, 1, 1);
    CHECK(single.realizations == 1);
    CHECK(single.pe_stderr == 0.0);
}

TEST_CASE("ensemble analysis does not depend on the thread count")
{
    SystemConfig c;
    c.users = 4;
    c.pulse_types = 2;
    const std::vector<Pulse> pulses{make_mhp(4, kDefaultTauP, kDefaultDt), make_mhp(5, kDefaultTauP, kDefaultDt)};
    const auto a = analyze_ensemble(c, pulses, ChannelParams{}, CombinerSpec{}, 12, 9, 1);
    const auto b = analyze_ensemble(c, pulses, ChannelParams{}, CombinerSpec{}, 12, 9, 4);
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        CHECK(a[i].mai.total == b[i].mai.total);
        CHECK(a[i].desired_corr == b[i].desired_corr);
    }
}
