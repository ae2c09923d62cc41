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

#include "fft.hpp"
#include "mpir/errors.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mpir
{

namespace
{

void check_grid(const Waveform &u, const Waveform &v)
{
    if (!(u.dt > 0.0) || std::abs(u.dt - v.dt) > 1e-12 * u.dt)
        throw Error(Errc::grid_mismatch, "waveforms are on different sample grids");
}

// Prefix sums of phi^2 on its integer lag grid for O(1) window integrals.
class SquaredCorrelation
{
  public:
    explicit SquaredCorrelation(const CorrelationFunction &phi) : first_(phi.values.empty() ? 0 : phi.first_index())
    {
        prefix_.resize(phi.values.size() + 1, 0.0);
        for (std::size_t i = 0; i < phi.values.size(); ++i)
            prefix_[i + 1] = prefix_[i] + phi.values[i] * phi.values[i];
    }

    // sum_{n=lo}^{hi-1} phi^2(n dt)
    double window(std::ptrdiff_t lo, std::ptrdiff_t hi) const noexcept
    {
        const auto size = static_cast<std::ptrdiff_t>(prefix_.size() - 1);
        const std::ptrdiff_t a = std::clamp<std::ptrdiff_t>(lo - first_, 0, size);
        const std::ptrdiff_t b = std::clamp<std::ptrdiff_t>(hi - first_, 0, size);
        return b > a ? prefix_[static_cast<std::size_t>(b)] - prefix_[static_cast<std::size_t>(a)] : 0.0;
    }

  private:
    std::ptrdiff_t first_;
    std::vector<double> prefix_;
};

inline std::ptrdiff_t mod(std::ptrdiff_t a, std::ptrdiff_t n)
{
    const std::ptrdiff_t r = a % n;
    return r < 0 ? r + n : r;
}

int resolve_threads(int threads)
{
    return threads > 0 ? threads : omp_get_max_threads();
}

} // namespace

CorrelationFunction correlation_functional(const Waveform &u, const Waveform &v)
{
    check_grid(u, v);
    CorrelationFunction phi;
    phi.lag_step = u.dt;
    phi.lag0 = static_cast<double>(v.start - u.start - static_cast<std::ptrdiff_t>(u.size()) + 1) * u.dt;
    if (u.empty() || v.empty())
        return phi;
    phi.values = fft::cross_correlate(u.samples, v.samples);
    for (double &x : phi.values)
        x *= u.dt;
    return phi;
}

double correlation_at(const Waveform &u, const Waveform &v, std::ptrdiff_t lag_index)
{
    check_grid(u, v);
    // u(t - x) is u's sample (n - lag_index) at global index n.
    const std::ptrdiff_t lo = std::max(v.start, u.start + lag_index);
    const std::ptrdiff_t hi = std::min(v.end(), u.end() + lag_index);
    double acc = 0.0;
    for (std::ptrdiff_t n = lo; n < hi; ++n)
        acc += u.samples[static_cast<std::size_t>(n - lag_index - u.start)] *
               v.samples[static_cast<std::size_t>(n - v.start)];
    return acc * u.dt;
}

MaiVariance mai_variance_multi(std::span<const std::vector<Waveform>> u_set, std::span<const Waveform> v_set,
                               const SystemConfig &config)
{
    config.validate();
    const auto Np = static_cast<std::size_t>(config.pulse_types);
    if (v_set.size() != Np)
        throw Error(Errc::config_mismatch, "need one template frame per pulse type");
    for (const auto &u : u_set)
        if (u.size() != Np)
            throw Error(Errc::config_mismatch, "need one interferer composite per pulse type");
    const auto grid = SampleGrid::make(config, v_set.front().dt);
    const int Nh = config.th_alphabet;
    const auto N = static_cast<std::ptrdiff_t>(Np);
    const double dt = grid.dt;

    MaiVariance out;
    out.frames_per_symbol = config.frames_per_symbol;
    out.pulse_types = config.pulse_types;
    out.th_alphabet = Nh;
    out.per_frame.assign(u_set.size(), std::vector<double>(Np, 0.0));

    double sum = 0.0;
    for (std::size_t k = 0; k < u_set.size(); ++k)
    {
        for (std::size_t j = 0; j < Np; ++j)
        {
            std::vector<SquaredCorrelation> sq;
            sq.reserve(Np);
            for (std::size_t r = 0; r < Np; ++r)
                sq.emplace_back(correlation_functional(u_set[k][r], v_set[j]));

            double acc = 0.0;
            const auto jj = static_cast<std::ptrdiff_t>(j);
            for (std::ptrdiff_t m = jj - N; m <= jj; ++m)
            {
                const auto &s = sq[static_cast<std::size_t>(mod(m, N))];
                for (int l = 1 - Nh; l <= Nh - 1; ++l)
                {
                    const std::ptrdiff_t lo = (m - jj) * grid.frame + l * grid.chip;
                    acc += (Nh - std::abs(l)) * s.window(lo, lo + N * grid.frame) * dt;
                }
            }
            const double sigma2 = acc / (config.frame_time() * static_cast<double>(Np));
            out.per_frame[k][j] = sigma2;
            sum += sigma2;
        }
    }
    out.total = sum / (static_cast<double>(config.frames_per_symbol) * Nh * Nh);
    return out;
}

double mai_variance_classical(const Waveform &u, const Waveform &v, const SystemConfig &config)
{
    config.validate();
    check_grid(u, v);
    const auto grid = SampleGrid::make(config, v.dt);
    const int Nh = config.th_alphabet;
    const SquaredCorrelation s(correlation_functional(u, v));
    double acc = 0.0;
    for (int l = 1 - Nh; l <= Nh - 1; ++l)
    {
        const std::ptrdiff_t centre = l * grid.chip;
        acc += (Nh - std::abs(l)) * s.window(centre - grid.frame, centre + grid.frame) * grid.dt;
    }
    return acc / config.frame_time();
}

double noise_variance(std::span<const Waveform> v_set, const SystemConfig &config)
{
    config.validate();
    if (static_cast<int>(v_set.size()) != config.pulse_types)
        throw Error(Errc::config_mismatch, "need one template frame per pulse type");
    double e = 0.0;
    for (const auto &v : v_set)
        e += v.energy();
    return config.noise_sigma * config.noise_sigma * config.frames_per_symbol / config.pulse_types * e;
}

double desired_term(std::span<const Waveform> u_set, std::span<const Waveform> v_set, const SystemConfig &config)
{
    config.validate();
    const auto Np = static_cast<std::size_t>(config.pulse_types);
    if (u_set.size() != Np || v_set.size() != Np)
        throw Error(Errc::config_mismatch, "need one composite per pulse type");
    double acc = 0.0;
    for (int j = 0; j < config.frames_per_symbol; ++j)
    {
        const auto t = static_cast<std::size_t>(j) % Np;
        acc += correlation_at(u_set[t], v_set[t], 0);
    }
    return acc / std::sqrt(static_cast<double>(config.frames_per_symbol));
}

double q_function(double x)
{
    return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

BepResult bep_multi(std::span<const double> desired_corr, const MaiVariance &mai,
                    std::span<const double> template_energy, const SystemConfig &config)
{
    config.validate();
    const auto Np = static_cast<std::size_t>(config.pulse_types);
    if (desired_corr.size() != Np || template_energy.size() != Np)
        throw Error(Errc::config_mismatch, "need one desired correlation and template energy per pulse type");
    BepResult r;
    double s = 0.0, e = 0.0;
    for (std::size_t j = 0; j < Np; ++j)
    {
        s += desired_corr[j];
        e += template_energy[j];
    }
    r.signal_term = s / std::sqrt(static_cast<double>(Np));
    r.mai_term = mai.total;
    r.noise_term = config.noise_sigma * config.noise_sigma * e;
    const double den = r.mai_term + r.noise_term;
    if (!(den > 0.0))
        throw Error(Errc::degenerate_input, "BEP denominator is zero (no MAI and no noise)");
    r.pe = q_function(r.signal_term / std::sqrt(den));
    return r;
}

BepResult bep_single(double desired_corr, std::span<const double> mai_per_interferer, double template_energy,
                     const SystemConfig &config)
{
    config.validate();
    const int Nh = config.th_alphabet;
    double m = 0.0;
    for (double v : mai_per_interferer)
        m += v;
    BepResult r;
    r.signal_term = desired_corr;
    r.mai_term = m / (static_cast<double>(config.frames_per_symbol) * Nh * Nh);
    r.noise_term = config.noise_sigma * config.noise_sigma * template_energy;
    const double den = r.mai_term + r.noise_term;
    if (!(den > 0.0))
        throw Error(Errc::degenerate_input, "BEP denominator is zero (no MAI and no noise)");
    r.pe = q_function(r.signal_term / std::sqrt(den));
    return r;
}

ConditionalTerms analyze_link(const LinkWaveforms &link, const SystemConfig &config)
{
    ConditionalTerms t;
    for (std::size_t j = 0; j < link.template_v.size(); ++j)
    {
        t.desired_corr.push_back(correlation_at(link.desired_u[j], link.template_v[j], 0));
        t.template_energy.push_back(link.template_v[j].energy());
    }
    t.mai = mai_variance_multi(link.interferer_u, link.template_v, config);
    return t;
}

BepResult evaluate_bep(const ConditionalTerms &terms, const SystemConfig &config)
{
    return bep_multi(terms.desired_corr, terms.mai, terms.template_energy, config);
}

std::vector<ConditionalTerms> analyze_ensemble(const SystemConfig &config, std::span<const Pulse> pulses,
                                               const ChannelParams &params, const CombinerSpec &combiner,
                                               std::size_t n, std::uint64_t seed, int threads)
{
    validate_pulses(config, pulses);
    if (n == 0)
        throw Error(Errc::invalid_parameter, "ensemble size must be >= 1");
    const double dt = pulses.front().dt;
    std::vector<ConditionalTerms> out(n);
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic) num_threads(resolve_threads(threads))
    for (std::ptrdiff_t i = 0; i < count; ++i)
    {
        const auto scenario = draw_scenario(config, params, dt, seed, static_cast<std::uint64_t>(i));
        const auto link = build_link_waveforms(scenario, pulses, combiner);
        out[static_cast<std::size_t>(i)] = analyze_link(link, config);
    }
    return out;
}

BepAverage bep_averaged(std::span<const ConditionalTerms> ensemble, const SystemConfig &config)
{
    if (ensemble.empty())
        throw Error(Errc::invalid_parameter, "ensemble size must be >= 1");
    BepAverage a;
    a.realizations = ensemble.size();
    double sum_pe = 0.0, sum_pe2 = 0.0;
    for (const auto &t : ensemble)
    {
        const auto r = evaluate_bep(t, config);
        sum_pe += r.pe;
        sum_pe2 += r.pe * r.pe;
        a.signal_term += r.signal_term;
        a.mai_term += r.mai_term;
        a.mai_decision_variance += t.mai.decision_variance();
    }
    const auto n = static_cast<double>(ensemble.size());
    a.pe = sum_pe / n;
    a.signal_term /= n;
    a.mai_term /= n;
    a.mai_decision_variance /= n;
    if (ensemble.size() > 1)
    {
        const double var = std::max(0.0, (sum_pe2 - n * a.pe * a.pe) / (n - 1.0));
        a.pe_stderr = std::sqrt(var / n);
    }
    return a;
}

BepAverage bep_averaged(const SystemConfig &config, std::span<const Pulse> pulses, const ChannelParams &params,
                        const CombinerSpec &combiner, std::size_t n, std::uint64_t seed, int threads)
{
    const auto ensemble = analyze_ensemble(config, pulses, params, combiner, n, seed, threads);
    return bep_averaged(ensemble, config);
}

} // namespace mpir
