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

#pragma once

#include "mpir/channel.hpp"
#include "mpir/pulses.hpp"
#include "mpir/scenario.hpp"
#include "mpir/system_config.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mpir
{

// phi_uv(x) = int u(t - x) v(t) dt for grid waveforms (FFT evaluation of the exact
// discrete correlation). Empty inputs give an empty function that evaluates to zero.
CorrelationFunction correlation_functional(const Waveform &u, const Waveform &v);

// phi_uv(n dt) by direct summation.
double correlation_at(const Waveform &u, const Waveform &v, std::ptrdiff_t lag_index = 0);

// MAI statistics conditioned on one set of channels.
//
// per_frame[k][j] is sigma^2_M(k, j) for interferer k (0-based over the K-1 interferers)
// and desired-user frame type j:
//
//   sigma^2_M(k,j) = 1/(T_f N_p) sum_{m=j-N_p}^{j} sum_{l=1-N_h}^{N_h-1} (N_h - |l|)
//                    int_0^{N_p T_f} phi^2_{u_m v_j}((m-j) T_f + l T_c + tau) dtau
//
// so that E{(M_hat_j^(k))^2} = sigma^2_M(k,j) / N_h^2. `total` is the BEP denominator term
// 1/(N_f N_h^2) sum_j sum_k sigma^2_M(k,j); the 1/N_h^2 factor is applied there only.
struct MaiVariance
{
    std::vector<std::vector<double>> per_frame;
    double total = 0.0;
    int frames_per_symbol = 1;
    int pulse_types = 1;
    int th_alphabet = 1;

    // Variance of the MAI term M of the decision statistic, (N_f/N_p) * total. This is the
    // quantity to compare between pulse plans at equal desired-signal energy.
    double decision_variance() const noexcept
    {
        return total * frames_per_symbol / static_cast<double>(pulse_types);
    }
};

// u_set[k][r]: interferer k's composite for pulse type r; v_set[j]: desired template frame j.
// The tau integral is a Riemann sum at the grid step.
MaiVariance mai_variance_multi(std::span<const std::vector<Waveform>> u_set, std::span<const Waveform> v_set,
                               const SystemConfig &config);

// Single pulse type: 1/T_f sum_l (N_h - |l|) int_{-T_f}^{T_f} phi^2_{uv}(l T_c + tau) dtau.
// Like sigma^2_M(k, j) it excludes the 1/N_h^2 factor.
double mai_variance_classical(const Waveform &u, const Waveform &v, const SystemConfig &config);

// sigma_n^2 (N_f/N_p) sum_j phi_{v_j}(0).
double noise_variance(std::span<const Waveform> v_set, const SystemConfig &config);

// (1/sqrt N_f) sum_{j<N_f} phi_{u_j v_j}(0): desired part of the decision statistic for b = 1.
double desired_term(std::span<const Waveform> u_set, std::span<const Waveform> v_set, const SystemConfig &config);

// Gaussian tail probability Q(x) = erfc(x/sqrt 2)/2.
double q_function(double x);

struct BepResult
{
    double signal_term = 0.0;
    double mai_term = 0.0;
    double noise_term = 0.0;
    double pe = 0.5;
};

// Q( (1/sqrt N_p) sum_j phi_{u_j v_j}(0) / sqrt(mai.total + sigma_n^2 sum_j phi_{v_j}(0)) ).
//
// The signal term relates to the waveform-level desired term by
// desired_term = sqrt(N_f / N_p) * signal_term, and the denominator is the decision
// statistic's MAI-plus-noise variance scaled by N_p/N_f, so the ratio equals the
// correlator output SNR.
BepResult bep_multi(std::span<const double> desired_corr, const MaiVariance &mai,
                    std::span<const double> template_energy, const SystemConfig &config);

// Q( phi_{u v}(0) / sqrt(1/(N_f N_h^2) sum_k sigma^2_M(k) + sigma_n^2 phi_v(0)) ).
BepResult bep_single(double desired_corr, std::span<const double> mai_per_interferer, double template_energy,
                     const SystemConfig &config);

// Channel-conditioned quantities feeding the BEP expression, independent of sigma_n.
struct ConditionalTerms
{
    std::vector<double> desired_corr;    // phi_{u_j v_j}(0), one per pulse type
    std::vector<double> template_energy; // phi_{v_j}(0)
    MaiVariance mai;
};

ConditionalTerms analyze_link(const LinkWaveforms &link, const SystemConfig &config);
BepResult evaluate_bep(const ConditionalTerms &terms, const SystemConfig &config);

// Conditional terms for realizations [0, n) drawn with draw_scenario(seed, index).
std::vector<ConditionalTerms> analyze_ensemble(const SystemConfig &config, std::span<const Pulse> pulses,
                                               const ChannelParams &params, const CombinerSpec &combiner,
                                               std::size_t n, std::uint64_t seed, int threads = 0);

struct BepAverage
{
    double pe = 0.0;
    double pe_stderr = 0.0;
    double signal_term = 0.0;
    double mai_term = 0.0;
    double mai_decision_variance = 0.0;
    std::size_t realizations = 0;
};

// Mean of the conditional BEP over an ensemble at config.noise_sigma.
BepAverage bep_averaged(std::span<const ConditionalTerms> ensemble, const SystemConfig &config);
BepAverage bep_averaged(const SystemConfig &config, std::span<const Pulse> pulses, const ChannelParams &params,
                        const CombinerSpec &combiner, std::size_t n, std::uint64_t seed, int threads = 0);

} // namespace mpir
