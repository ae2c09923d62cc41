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
#include "mpir/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace mpir;

TEST_CASE("omega0 normalizes the expected channel energy")
{
    for (double decay : {0.1, 0.5, 2.0})
        for (int L : {1, 5, 20})
        {
            ChannelParams p;
            p.decay = decay;
            p.paths = L;
            double sum = 0.0;
            for (int l = 0; l < L; ++l)
                sum += std::exp(2.0 * mean_log_gain(p, l) + 2.0 * p.sigma2);
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        }
}

TEST_CASE("mean log gain follows the closed form")
{
    ChannelParams p;
    const double omega0 = (1.0 - std::exp(-0.5)) / (1.0 - std::exp(-0.5 * 20));
    CHECK(p.omega0() == doctest::Approx(omega0).epsilon(1e-14));
    for (int l : {0, 7, 19})
        CHECK(mean_log_gain(p, l) == doctest::Approx(0.5 * (std::log(omega0) - 0.5 * l - 2.0)).epsilon(1e-14));
    CHECK_THROWS_AS(mean_log_gain(p, 20), Error);
}

TEST_CASE("unconstrained channel statistics")
{
    ChannelParams p;
    auto rng = make_rng(17, 0, StreamRole::channel_stats);
    const int n = 20000;
    double log0 = 0.0, energy = 0.0, last_delay = 0.0;
    int positive = 0;
    for (int i = 0; i < n; ++i)
    {
        const auto c = sample_channel_unconstrained(p, rng);
        log0 += std::log(std::abs(c.gains[0]));
        energy += c.energy();
        last_delay += c.delays.back();
        positive += c.gains[3] > 0.0;
        CHECK(c.delays[0] == 0.0);
    }
    // Standard errors: 1/sqrt(n) = 0.007 for the log gain, about 1.6% for the energy,
    // sqrt(19) * 1.5 ns / sqrt(n) = 0.046 ns for the last arrival.
    CHECK(log0 / n == doctest::Approx(mean_log_gain(p, 0)).epsilon(0.03 / std::abs(mean_log_gain(p, 0))));
    CHECK(energy / n == doctest::Approx(1.0).epsilon(0.06));
    CHECK(last_delay / n == doctest::Approx(19 * 1.5e-9).epsilon(0.01));
    CHECK(positive / static_cast<double>(n) == doctest::Approx(0.5).epsilon(0.03));
}

TEST_CASE("constrained channels respect the no-IFI bound")
{
    ChannelParams p;
    SystemConfig cfg;
    RejectionStats stats;
    auto rng = make_rng(3, 0, StreamRole::channel_stats);
    const double limit = cfg.frame_time() - cfg.th_alphabet * cfg.chip_time;
    for (int i = 0; i < 5000; ++i)
        CHECK(sample_channel(p, cfg, rng, &stats).delays.back() < limit);
    // P(Gamma(19, 1.5 ns) < 37 ns) = 0.8969, from the regularized incomplete gamma function.
    CHECK(stats.acceptance_rate() == doctest::Approx(0.8969).epsilon(0.02));
}

TEST_CASE("infeasible geometry is reported")
{
    ChannelParams p;
    SystemConfig cfg;
    cfg.chips_per_frame = cfg.th_alphabet;
    auto rng = make_rng(3, 1, StreamRole::channel_stats);
    try
    {
        sample_channel(p, cfg, rng, nullptr, 50);
        FAIL("expected infeasible geometry");
    }
    catch (const Error &e)
    {
        CHECK(e.code() == Errc::infeasible_geometry);
    }
}

TEST_CASE("power scale multiplies the mean energy")
{
    ChannelParams p;
    p.sigma2 = 0.0;
    p.power_scale = 5.0;
    auto rng = make_rng(5, 0, StreamRole::channel_stats);
    // With sigma2 = 0 the magnitudes are deterministic.
    CHECK(sample_channel_unconstrained(p, rng).energy() == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("channel CSV round trip")
{
    ChannelParams p;
    auto rng = make_rng(8, 0, StreamRole::channel_stats);
    const auto c = sample_channel_unconstrained(p, rng);
    std::stringstream ss;
    write_channel_csv(ss, c);
    const auto back = read_channel_csv(ss);
    REQUIRE(back.size() == c.size());
    for (std::size_t l = 0; l < c.size(); ++l)
    {
        CHECK(back.gains[l] == c.gains[l]);
        CHECK(back.delays[l] == doctest::Approx(c.delays[l]).epsilon(1e-15));
    }
    std::stringstream bad("0,1.0,0\n0,2.0,1\n");
    CHECK_THROWS_AS(read_channel_csv(bad), Error);
    std::stringstream junk("0,x,0\n");
    CHECK_THROWS_AS(read_channel_csv(junk), Error);
}

TEST_CASE("composite waveform places scaled pulse copies")
{
    const auto pulse = make_mhp(4, kDefaultTauP, kDefaultDt);
    const auto base = to_waveform(pulse);
    ChannelRealization c{{0.5, -0.25}, {0.0, 3e-9}};
    const auto w = composite_waveform(pulse, c, c.gains);
    CHECK(w.energy() == doctest::Approx(0.25 + 0.0625).epsilon(1e-9));
    CHECK(w.at(base.start) == doctest::Approx(0.5 * base.samples.front()));
    const std::ptrdiff_t shift = 150;
    CHECK(w.at(shift) == doctest::Approx(-0.25 * base.at(0)));
    const std::vector<double> zeros(2, 0.0);
    CHECK(composite_waveform(pulse, c, zeros).empty());
    CHECK_THROWS_AS(composite_waveform(pulse, c, std::vector<double>(3, 1.0)), Error);
}
