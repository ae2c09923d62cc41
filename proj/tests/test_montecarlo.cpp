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
#include "mpir/montecarlo.hpp"
#include "mpir/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace mpir;

namespace
{

SystemConfig small_system(int users)
{
    SystemConfig c;
    c.users = users;
    c.chips_per_frame = 40;
    return c;
}

TrialPlan small_plan()
{
    TrialPlan p;
    p.master_seed = 21;
    p.bits_per_realization = 100;
    p.batch_size = 4;
    p.stop.max_bits = 4000;
    p.stop.min_errors = 50;
    return p;
}

const std::vector<Pulse> &single_pulse()
{
    static const std::vector<Pulse> p{make_mhp(4, kDefaultTauP, kDefaultDt)};
    return p;
}

} // namespace

TEST_CASE("Wilson interval against reference values")
{
    // Frozen from statsmodels proportion_confint(method="wilson").
    auto w = wilson_interval(50, 1000);
    CHECK(w.centre == doctest::Approx(0.051722041318499806).epsilon(1e-12));
    CHECK(w.half_width == doctest::Approx(0.013591778925750999).epsilon(1e-12));
    w = wilson_interval(0, 100);
    CHECK(w.centre == doctest::Approx(0.018496749103492846).epsilon(1e-12));
    CHECK(w.half_width == doctest::Approx(0.018496749103492846).epsilon(1e-12));
    w = wilson_interval(7, 100000);
    CHECK(w.centre == doctest::Approx(8.920386737363902e-05).epsilon(1e-12));
    CHECK(w.half_width == doctest::Approx(5.529482958347404e-05).epsilon(1e-12));
}

TEST_CASE("Wilson interval covers a known Bernoulli probability")
{
    const double p = 0.03;
    const std::uint64_t n = 2000;
    int covered = 0;
    for (std::uint64_t rep = 0; rep < 1000; ++rep)
    {
        auto rng = make_rng(5, rep, StreamRole::generic);
        std::bernoulli_distribution b(p);
        std::uint64_t k = 0;
        for (std::uint64_t i = 0; i < n; ++i)
            k += b(rng);
        covered += wilson_interval(k, n).contains(p);
    }
    CHECK(covered >= 930);
}

TEST_CASE("trial plan validation")
{
    TrialPlan p;
    p.bits_per_realization = 0;
    CHECK_THROWS_AS(p.validate(), Error);
    p = TrialPlan{};
    p.batch_size = 0;
    CHECK_THROWS_AS(p.validate(), Error);
}

TEST_CASE("sweep results do not depend on the thread count")
{
    const auto c = small_system(4);
    const std::vector<double> sigmas{noise_sigma_for_ebn0(0.0), noise_sigma_for_ebn0(10.0)};
    const auto a = run_ber_sweep(c, single_pulse(), ChannelParams{}, CombinerSpec{}, small_plan(), sigmas, 1);
    const auto b = run_ber_sweep(c, single_pulse(), ChannelParams{}, CombinerSpec{}, small_plan(), sigmas, 3);
    for (std::size_t i = 0; i < sigmas.size(); ++i)
    {
        CHECK(a[i].errors == b[i].errors);
        CHECK(a[i].bits == b[i].bits);
        CHECK(a[i].ber == b[i].ber);
    }
}

TEST_CASE("stopping rule and callbacks")
{
    const auto c = small_system(4);
    const std::vector<double> sigmas{noise_sigma_for_ebn0(-5.0), noise_sigma_for_ebn0(30.0)};
    std::vector<int> calls(2, 0);
    const auto r = run_ber_sweep(c, single_pulse(), ChannelParams{}, CombinerSpec{}, small_plan(), sigmas, 0,
                                 [&](std::size_t i, const BerEstimate &) { ++calls[i]; });
    CHECK(calls == std::vector<int>{1, 1});
    for (const auto &e : r)
    {
        CHECK(e.ber == doctest::Approx(static_cast<double>(e.errors) / static_cast<double>(e.bits)));
        CHECK(e.bits % 400 == 0);
        CHECK(e.capped == (e.errors < 50));
        CHECK((e.errors >= 50 || e.bits >= 4000));
    }
    // At -5 dB the first batch already holds well over 50 errors.
    CHECK(r[0].bits == 400);
}

TEST_CASE("noise-free single user makes no errors")
{
    const auto c = small_system(1);
    const std::vector<double> sigmas{0.0};
    const auto r = run_ber_sweep(c, single_pulse(), ChannelParams{}, CombinerSpec{}, small_plan(), sigmas);
    CHECK(r[0].errors == 0);
    CHECK(r[0].bits == 4000);
    CHECK(r[0].capped);
}

TEST_CASE("single path AWGN link matches Q(sqrt(2 Eb/N0))")
{
    auto c = small_system(1);
    ChannelParams params;
    params.paths = 1;
    params.sigma2 = 0.0;
    TrialPlan plan = small_plan();
    plan.bits_per_realization = 1000;
    plan.stop.max_bits = 20000;
    plan.stop.min_errors = 1'000'000;
    for (double db : {0.0, 4.0})
    {
        c.noise_sigma = noise_sigma_for_ebn0(db);
        const auto e = run_ber(c, single_pulse(), params, CombinerSpec{}, plan);
        const double expected = q_function(std::sqrt(2.0 * std::pow(10.0, db / 10.0)));
        // 99.9% interval so the fixed-seed check is not a coin flip.
        CHECK(wilson_interval(e.errors, e.bits, 3.290526731491926).contains(expected));
    }
}

TEST_CASE("MAI oracle scaling")
{
    SystemConfig c;
    c.pulse_types = 2;
    const std::vector<Pulse> pulses{make_mhp(4, kDefaultTauP, kDefaultDt), make_mhp(5, kDefaultTauP, kDefaultDt)};
    ChannelRealization d{{0.8, -0.4}, {0.0, 1.5e-9}};
    ChannelRealization in{{1.1, 0.6, -0.3}, {0.0, 0.9e-9, 2.7e-9}};
    const auto base = estimate_mai_variance(c, pulses, d, in, CombinerSpec{}, 1, 20000, 3);
    CHECK(base.variance > 0.0);
    ChannelRealization twice = in;
    for (auto &g : twice.gains)
        g *= 2.0;
    CHECK(estimate_mai_variance(c, pulses, d, twice, CombinerSpec{}, 1, 20000, 3).variance ==
          doctest::Approx(4.0 * base.variance).epsilon(1e-9));
    ChannelRealization silent = in;
    for (auto &g : silent.gains)
        g = 0.0;
    CHECK(estimate_mai_variance(c, pulses, d, silent, CombinerSpec{}, 1, 20000, 3).variance == 0.0);
    CHECK_THROWS_AS(estimate_mai_variance(c, pulses, d, in, CombinerSpec{}, 2, 20000, 3), Error);
}

TEST_CASE("noise oracle scaling and the per-sample negative control")
{
    SystemConfig c;
    c.pulse_types = 2;
    ChannelRealization d{{0.8, -0.4}, {0.0, 1.5e-9}};
    std::vector<Waveform> v;
    for (int j = 0; j < 2; ++j)
        v.push_back(composite_waveform(make_mhp(4 + j, kDefaultTauP, kDefaultDt), d, d.gains));
    c.noise_sigma = 0.0;
    CHECK(estimate_noise_variance(c, v, 1000, 4).variance == 0.0);
    c.noise_sigma = 0.2;
    const auto a = estimate_noise_variance(c, v, 20000, 4);
    c.noise_sigma = 0.4;
    const auto b = estimate_noise_variance(c, v, 20000, 4);
    CHECK(b.variance == doctest::Approx(4.0 * a.variance).epsilon(1e-9));
    const double analytic = noise_variance(v, c);
    CHECK(b.variance == doctest::Approx(analytic).epsilon(0.05));
    const auto wrong = estimate_noise_variance(c, v, 20000, 4, NoiseConvention::per_sample);
    CHECK(wrong.variance == doctest::Approx(b.variance * kDefaultDt).epsilon(1e-9));
}
