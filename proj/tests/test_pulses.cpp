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

#include "mpir/errors.hpp"
#include "mpir/pulses.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace mpir;

namespace
{

constexpr double tau = kDefaultTauP;
constexpr double dt = kDefaultDt;

double dot(const Pulse &a, const Pulse &b)
{
    // Both pulses are centred on the same origin; align by t0.
    const auto off = static_cast<std::ptrdiff_t>(std::lround((b.t0 - a.t0) / a.dt));
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        const auto j = static_cast<std::ptrdiff_t>(i) - off;
        if (j >= 0 && j < static_cast<std::ptrdiff_t>(b.size()))
            acc += a.samples[i] * b.samples[static_cast<std::size_t>(j)];
    }
    return acc * a.dt;
}

std::vector<double> zero_crossings(const Pulse &p)
{
    std::vector<double> z;
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
    {
        const double a = p.samples[i], b = p.samples[i + 1];
        if ((a < 0.0) != (b < 0.0) && a != 0.0)
            z.push_back(p.t0 + (static_cast<double>(i) + a / (a - b)) * p.dt);
    }
    return z;
}

} // namespace

TEST_CASE("mhp pulses have unit energy and a symmetric grid")
{
    for (int n = 0; n <= 10; ++n)
    {
        const auto p = make_mhp(n, tau, dt);
        CHECK(p.energy() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(p.size() % 2 == 1);
        CHECK(p.t0 == doctest::Approx(-0.5 * static_cast<double>(p.size() - 1) * dt));
    }
}

TEST_CASE("orders of opposite parity are orthogonal at zero lag")
{
    const auto p4 = make_mhp(4, tau, dt), p5 = make_mhp(5, tau, dt);
    CHECK(std::abs(dot(p4, p5)) < 1e-6);
    const auto p0 = make_mhp(0, tau, dt), p1 = make_mhp(1, tau, dt);
    CHECK(std::abs(dot(p0, p1)) < 1e-6);
}

TEST_CASE("mhp4 zero crossings sit at the He_4 roots")
{
    // He_4 roots: +-sqrt(3 -+ sqrt 6).
    const double r1 = std::sqrt(3.0 - std::sqrt(6.0)) * tau, r2 = std::sqrt(3.0 + std::sqrt(6.0)) * tau;
    const std::vector<double> expected{-r2, -r1, r1, r2};
    const auto z = zero_crossings(make_mhp(4, tau, dt));
    REQUIRE(z.size() == 4);
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(z[i] == doctest::Approx(expected[i]).epsilon(0.02));
    const auto p = make_mhp(4, tau, dt);
    const auto peak = std::max_element(p.samples.begin(), p.samples.end(),
                                       [](double a, double b) { return std::abs(a) < std::abs(b); });
    CHECK(p.t0 + static_cast<double>(peak - p.samples.begin()) * dt == doctest::Approx(0.0));
}

TEST_CASE("truncation keeps orders up to 5 within a 1 ns chip")
{
    for (int n = 0; n <= 5; ++n)
        CHECK(make_mhp(n, tau, dt).support() <= 1e-9);
}

TEST_CASE("make_mhp rejects bad parameters")
{
    CHECK_THROWS_AS(make_mhp(4, 0.0, dt), Error);
    CHECK_THROWS_AS(make_mhp(4, tau, -dt), Error);
    CHECK_THROWS_AS(make_mhp(11, tau, dt), Error);
    try
    {
        make_mhp(4, tau, 0.6 * tau);
        FAIL("expected a resolution error");
    }
    catch (const Error &e)
    {
        CHECK(e.code() == Errc::resolution);
    }
}

TEST_CASE("zero pulse cannot be normalized")
{
    Pulse p{std::vector<double>(9, 0.0), dt, -4 * dt, "zero"};
    try
    {
        normalize_energy(p);
        FAIL("expected a degenerate-input error");
    }
    catch (const Error &e)
    {
        CHECK(e.code() == Errc::degenerate_input);
    }
}

TEST_CASE("correlation integral converges under grid refinement")
{
    auto sq_integral = [](double step) {
        const auto p = make_mhp(4, tau, step);
        const auto c = cross_correlation(p, p);
        double s = 0.0;
        for (double v : c.values)
            s += v * v;
        return s * c.lag_step;
    };
    const double coarse = sq_integral(dt), fine = sq_integral(dt / 2);
    CHECK(std::abs(coarse / fine - 1.0) < 1e-6);
}

TEST_CASE("cross_correlation matches the direct sum and its lag origin")
{
    const auto a = make_mhp(4, tau, dt), b = make_mhp(5, tau, dt);
    const auto c = cross_correlation(a, b);
    const auto direct = correlate_direct(a.samples, b.samples);
    REQUIRE(c.values.size() == direct.size());
    for (std::size_t i = 0; i < direct.size(); ++i)
        CHECK(c.values[i] == doctest::Approx(direct[i] * dt).epsilon(1e-9).scale(1e-12));
    CHECK(c.lag0 == doctest::Approx(b.t0 - a.t0 - static_cast<double>(a.size() - 1) * dt));
    const auto self = cross_correlation(a, a);
    CHECK(self(0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(self(self.lag0 - dt) == 0.0);
}

TEST_CASE("mhp4 spectrum peak agrees with direct quadrature")
{
    // Frozen from a 200001-point quadrature of He_4(t/tau) exp(-t^2/(4 tau^2)) at tau = 0.05 ns.
    const double expected_peak = 5.4417064e9;
    const auto s = pulse_spectrum(make_mhp(4, tau, dt), 1 << 16);
    const auto it = std::max_element(s.magnitude_sq.begin(), s.magnitude_sq.end());
    const double f = std::abs(s.freqs[static_cast<std::size_t>(it - s.magnitude_sq.begin())]);
    CHECK(std::abs(f - expected_peak) <= s.df());
}

TEST_CASE("Parseval holds for the pulse transform")
{
    const auto p = make_mhp(5, tau, dt);
    const auto s = pulse_spectrum(p, 4096);
    double sum = 0.0;
    for (double v : s.magnitude_sq)
        sum += v;
    CHECK(sum * s.df() == doctest::Approx(p.energy()).epsilon(1e-9));
}

TEST_CASE("to_waveform requires a grid-aligned origin")
{
    const auto p = make_mhp(4, tau, dt);
    const auto w = to_waveform(p);
    CHECK(w.start == static_cast<std::ptrdiff_t>(std::lround(p.t0 / dt)));
    CHECK(w.energy() == doctest::Approx(1.0));
    Pulse shifted = p;
    shifted.t0 += 0.5 * dt;
    CHECK_THROWS_AS(to_waveform(shifted), Error);
}
