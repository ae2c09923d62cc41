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

#include "mpir/montecarlo.hpp"

#include "mpir/analysis.hpp"
#include "mpir/errors.hpp"
#include "mpir/rng.hpp"

#include <omp.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

namespace mpir
{

namespace
{

int resolve_threads(int threads)
{
    return threads > 0 ? threads : omp_get_max_threads();
}

inline std::ptrdiff_t floor_div(std::ptrdiff_t a, std::ptrdiff_t b)
{
    const std::ptrdiff_t q = a / b;
    return (a % b != 0 && (a < 0) != (b < 0)) ? q - 1 : q;
}

// dt * sum_n u(n - pu) v(n - pv), u and v given relative to origins pu and pv.
double placed_dot(const Waveform &u, std::ptrdiff_t pu, const Waveform &v, std::ptrdiff_t pv)
{
    const std::ptrdiff_t lo = std::max(u.start + pu, v.start + pv);
    const std::ptrdiff_t hi = std::min(u.end() + pu, v.end() + pv);
    if (lo >= hi)
        return 0.0;
    const double *a = u.samples.data() + (lo - pu - u.start);
    const double *b = v.samples.data() + (lo - pv - v.start);
    double acc = 0.0;
    for (std::ptrdiff_t i = 0; i < hi - lo; ++i)
        acc += a[i] * b[i];
    return acc * u.dt;
}

// Per-bit error indicators of one realization, one count per noise level.
std::vector<std::uint64_t> simulate_realization(const SystemConfig &config, std::span<const Pulse> pulses,
                                                const ChannelParams &params, const CombinerSpec &combiner,
                                                std::uint64_t seed, std::uint64_t index, std::size_t n_bits,
                                                std::span<const double> sigmas)
{
    const double dt = pulses.front().dt;
    const auto grid = SampleGrid::make(config, dt);
    const auto Nf = static_cast<std::size_t>(config.frames_per_symbol);
    const auto scenario = draw_scenario(config, params, dt, seed, index);
    const auto link = build_link_waveforms(scenario, pulses, combiner);

    auto code_rng = make_rng(seed, index, StreamRole::codes, 0);
    auto bit_rng = make_rng(seed, index, StreamRole::bits, 0);
    const auto codes = generate_codes(config, n_bits * Nf, code_rng);
    const auto bits = generate_bits(n_bits, bit_rng);

    // Received signal without noise: the desired block through its channel plus every
    // interferer's block, which starts one symbol early so the window is fully covered.
    Waveform received = transmit_block(config, std::span<const Waveform>(link.desired_u), bits, codes);
    for (std::size_t k = 0; k < link.interferer_u.size(); ++k)
    {
        const auto sub = static_cast<std::uint32_t>(k + 1);
        auto crng = make_rng(seed, index, StreamRole::codes, sub);
        auto brng = make_rng(seed, index, StreamRole::bits, sub);
        const auto icodes = generate_codes(config, (n_bits + 1) * Nf, crng);
        const auto ibits = generate_bits(n_bits + 1, brng);
        superimpose_block(received, config, link.interferer_u[k], ibits, icodes,
                          scenario.offsets[k + 1] - grid.symbol);
    }

    const bool noisy = std::any_of(sigmas.begin(), sigmas.end(), [](double s) { return s > 0.0; });
    Waveform noise;
    if (noisy)
    {
        auto nrng = make_rng(seed, index, StreamRole::noise);
        noise = white_noise(received.start, received.size(), dt, 1.0, nrng);
    }

    std::vector<std::uint64_t> errors(sigmas.size(), 0);
    for (std::size_t i = 0; i < n_bits; ++i)
    {
        const auto tmpl = rake_template(config, codes, link.template_v, i);
        const double ys = decision_statistic(received, tmpl);
        const double yn = noisy ? decision_statistic(noise, tmpl) : 0.0;
        for (std::size_t p = 0; p < sigmas.size(); ++p)
        {
            const double y = ys + sigmas[p] * yn;
            const int decided = y > 0.0 ? 1 : -1;
            if (decided != bits[i])
                ++errors[p];
        }
    }
    return errors;
}

BerEstimate finalize(std::uint64_t errors, std::uint64_t bits, const StopRule &stop)
{
    BerEstimate e;
    e.errors = errors;
    e.bits = bits;
    e.ber = bits ? static_cast<double>(errors) / static_cast<double>(bits) : 0.0;
    e.ci95 = wilson_interval(errors, bits).half_width;
    e.capped = errors < stop.min_errors;
    return e;
}

} // namespace

void TrialPlan::validate() const
{
    if (min_realizations < 1 || bits_per_realization < 1 || batch_size < 1)
        throw Error(Errc::invalid_parameter, "trial plan counts must be positive");
    if (stop.max_bits < 1)
        throw Error(Errc::invalid_parameter, "max_bits must be positive");
}

WilsonInterval wilson_interval(std::uint64_t errors, std::uint64_t bits, double z)
{
    if (bits == 0)
        return {0.5, 0.5};
    const double n = static_cast<double>(bits);
    const double p = static_cast<double>(errors) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    WilsonInterval w;
    w.centre = (p + z2 / (2.0 * n)) / denom;
    w.half_width = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return w;
}

std::vector<BerEstimate> run_ber_sweep(const SystemConfig &config, std::span<const Pulse> pulses,
                                       const ChannelParams &params, const CombinerSpec &combiner,
                                       const TrialPlan &plan, std::span<const double> noise_sigmas, int threads,
                                       const PointCallback &on_point)
{
    validate_pulses(config, pulses);
    params.validate();
    plan.validate();
    if (noise_sigmas.empty())
        throw Error(Errc::invalid_parameter, "at least one noise level is required");
    for (double s : noise_sigmas)
        if (!(s >= 0.0) || !std::isfinite(s))
            throw Error(Errc::invalid_parameter, "noise levels must be finite and non-negative");

    const std::size_t P = noise_sigmas.size();
    std::vector<std::uint64_t> errors(P, 0), bits(P, 0);
    std::vector<bool> done(P, false);
    std::vector<BerEstimate> result(P);
    const int workers = resolve_threads(threads);

    std::size_t next = 0;
    while (std::find(done.begin(), done.end(), false) != done.end())
    {
        const std::size_t batch = plan.batch_size;
        std::vector<std::vector<std::uint64_t>> per(batch);
        const auto count = static_cast<std::ptrdiff_t>(batch);
#pragma omp parallel for schedule(dynamic) num_threads(workers)
        for (std::ptrdiff_t b = 0; b < count; ++b)
            per[static_cast<std::size_t>(b)] =
                simulate_realization(config, pulses, params, combiner, plan.master_seed,
                                     static_cast<std::uint64_t>(next) + static_cast<std::uint64_t>(b),
                                     plan.bits_per_realization, noise_sigmas);
        next += batch;

        for (const auto &e : per)
            for (std::size_t p = 0; p < P; ++p)
                if (!done[p])
                {
                    errors[p] += e[p];
                    bits[p] += plan.bits_per_realization;
                }
        for (std::size_t p = 0; p < P; ++p)
        {
            if (done[p])
                continue;
            const bool enough = next >= plan.min_realizations && errors[p] >= plan.stop.min_errors;
            if (enough || bits[p] >= plan.stop.max_bits)
            {
                done[p] = true;
                result[p] = finalize(errors[p], bits[p], plan.stop);
                if (on_point)
                    on_point(p, result[p]);
            }
        }
    }
    return result;
}

BerEstimate run_ber(const SystemConfig &config, std::span<const Pulse> pulses, const ChannelParams &params,
                    const CombinerSpec &combiner, const TrialPlan &plan, int threads)
{
    const double sigma = config.noise_sigma;
    return run_ber_sweep(config, pulses, params, combiner, plan, std::span<const double>(&sigma, 1), threads)
        .front();
}

MomentEstimate estimate_mai_variance(const SystemConfig &config, std::span<const Pulse> pulses,
                                     const ChannelRealization &desired, const ChannelRealization &interferer,
                                     const CombinerSpec &combiner, int frame, std::uint64_t n_samples,
                                     std::uint64_t seed, int threads)
{
    validate_pulses(config, pulses);
    if (frame < 0 || frame >= config.frames_per_symbol)
        throw Error(Errc::invalid_parameter, "frame index must lie within the symbol");
    if (n_samples < 2)
        throw Error(Errc::invalid_parameter, "need at least two samples");
    const auto grid = SampleGrid::make(config, pulses.front().dt);
    const auto Np = static_cast<std::ptrdiff_t>(config.pulse_types);
    const auto Nf = static_cast<std::ptrdiff_t>(config.frames_per_symbol);

    const auto rc = select_combiner(desired, combiner.scheme, combiner.selection);
    const auto j = static_cast<std::ptrdiff_t>(frame);
    const Waveform v = composite_waveform(pulses[static_cast<std::size_t>(j % Np)], desired, rc.beta);
    std::vector<Waveform> u;
    for (const auto &p : pulses)
        u.push_back(composite_waveform(p, interferer, interferer.gains));

    const std::ptrdiff_t m_lo = j - Nf - 1, m_hi = j + 1;
    const std::ptrdiff_t s_lo = floor_div(m_lo, Nf), s_hi = floor_div(m_hi, Nf);

    constexpr std::uint64_t kBlock = 4096;
    const std::uint64_t n_blocks = (n_samples + kBlock - 1) / kBlock;
    struct Sums
    {
        double s1 = 0, s2 = 0, s4 = 0;
    };
    std::vector<Sums> sums(n_blocks);
    const auto nb = static_cast<std::ptrdiff_t>(n_blocks);
#pragma omp parallel for schedule(dynamic) num_threads(resolve_threads(threads))
    for (std::ptrdiff_t blk = 0; blk < nb; ++blk)
    {
        auto rng = make_rng(seed, static_cast<std::uint64_t>(blk), StreamRole::mai_oracle,
                            static_cast<std::uint32_t>(frame));
        std::uniform_int_distribution<std::ptrdiff_t> tau(0, grid.symbol - 1);
        std::uniform_int_distribution<int> chip(0, config.th_alphabet - 1);
        std::bernoulli_distribution coin(0.5);
        std::vector<int> sym_bits(static_cast<std::size_t>(s_hi - s_lo + 1));
        const std::uint64_t begin = static_cast<std::uint64_t>(blk) * kBlock;
        const std::uint64_t end = std::min(n_samples, begin + kBlock);
        Sums s;
        for (std::uint64_t draw = begin; draw < end; ++draw)
        {
            const std::ptrdiff_t tau0 = tau(rng);
            const int cj = chip(rng);
            const double dj = coin(rng) ? 1.0 : -1.0;
            for (auto &b : sym_bits)
                b = coin(rng) ? 1 : -1;
            const std::ptrdiff_t pv = j * grid.frame + cj * grid.chip;
            double m_hat = 0.0;
            for (std::ptrdiff_t m = m_lo; m <= m_hi; ++m)
            {
                const int cm = chip(rng);
                const double dm = coin(rng) ? 1.0 : -1.0;
                const double bm = sym_bits[static_cast<std::size_t>(floor_div(m, Nf) - s_lo)];
                const std::ptrdiff_t pu = m * grid.frame + cm * grid.chip + tau0;
                const auto type = static_cast<std::size_t>(((m % Np) + Np) % Np);
                m_hat += dm * bm * placed_dot(u[type], pu, v, pv);
            }
            m_hat *= dj;
            const double sq = m_hat * m_hat;
            s.s1 += m_hat;
            s.s2 += sq;
            s.s4 += sq * sq;
        }
        sums[static_cast<std::size_t>(blk)] = s;
    }

    Sums t;
    for (const auto &s : sums)
    {
        t.s1 += s.s1;
        t.s2 += s.s2;
        t.s4 += s.s4;
    }
    const double n = static_cast<double>(n_samples);
    MomentEstimate e;
    e.samples = n_samples;
    e.mean = t.s1 / n;
    e.variance = (t.s2 - n * e.mean * e.mean) / (n - 1.0);
    const double m2 = t.s2 / n, m4 = t.s4 / n;
    e.variance_stderr = std::sqrt(std::max(0.0, m4 - m2 * m2) / n);
    return e;
}

MomentEstimate estimate_noise_variance(const SystemConfig &config, std::span<const Waveform> templates,
                                       std::uint64_t n_trials, std::uint64_t seed, NoiseConvention convention,
                                       int threads)
{
    config.validate();
    if (static_cast<int>(templates.size()) != config.pulse_types)
        throw Error(Errc::config_mismatch, "need one template frame per pulse type");
    if (n_trials < 2)
        throw Error(Errc::invalid_parameter, "need at least two trials");
    const double dt = templates.front().dt;
    const auto Nf = static_cast<std::size_t>(config.frames_per_symbol);

    constexpr std::uint64_t kBlock = 1024;
    const std::uint64_t n_blocks = (n_trials + kBlock - 1) / kBlock;
    std::vector<std::array<double, 3>> sums(n_blocks, {0.0, 0.0, 0.0});
    const auto nb = static_cast<std::ptrdiff_t>(n_blocks);
#pragma omp parallel for schedule(dynamic) num_threads(resolve_threads(threads))
    for (std::ptrdiff_t blk = 0; blk < nb; ++blk)
    {
        auto rng = make_rng(seed, static_cast<std::uint64_t>(blk), StreamRole::noise_oracle);
        const std::uint64_t begin = static_cast<std::uint64_t>(blk) * kBlock;
        const std::uint64_t end = std::min(n_trials, begin + kBlock);
        std::array<double, 3> s{0.0, 0.0, 0.0};
        for (std::uint64_t trial = begin; trial < end; ++trial)
        {
            const auto codes = generate_codes(config, Nf, rng);
            const auto tmpl = rake_template(config, codes, templates, 0);
            const auto noise = white_noise(tmpl.start, tmpl.size(), dt, config.noise_sigma, rng, convention);
            const double y = decision_statistic(noise, tmpl);
            s[0] += y;
            s[1] += y * y;
            s[2] += y * y * y * y;
        }
        sums[static_cast<std::size_t>(blk)] = s;
    }
    std::array<double, 3> t{0.0, 0.0, 0.0};
    for (const auto &s : sums)
        for (int i = 0; i < 3; ++i)
            t[static_cast<std::size_t>(i)] += s[static_cast<std::size_t>(i)];
    const double n = static_cast<double>(n_trials);
    MomentEstimate e;
    e.samples = n_trials;
    e.mean = t[0] / n;
    e.variance = (t[1] - n * e.mean * e.mean) / (n - 1.0);
    const double m2 = t[1] / n, m4 = t[2] / n;
    e.variance_stderr = std::sqrt(std::max(0.0, m4 - m2 * m2) / n);
    return e;
}

} // namespace mpir
