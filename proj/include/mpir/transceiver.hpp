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
#include "mpir/rng.hpp"
#include "mpir/system_config.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace mpir
{

// Per-frame time-hopping chips c_j in {0..N_h-1} and polarity codes d_j in {-1,+1}.
struct CodeSequences
{
    std::vector<int> th;
    std::vector<int> polarity;

    std::size_t frames() const noexcept { return th.size(); }
};

CodeSequences generate_codes(const SystemConfig &config, std::size_t n_frames, CounterRng &rng);

// Equiprobable +-1 information bits.
std::vector<int> generate_bits(std::size_t n_bits, CounterRng &rng);

enum class CombiningScheme
{
    mrc,
    egc
};

struct PathSelection
{
    enum class Kind
    {
        all,
        partial,   // first `count` arrivals
        selective  // `count` strongest arrivals
    };
    Kind kind = Kind::all;
    int count = 0;

    static PathSelection all() { return {}; }
    static PathSelection partial(int m) { return {Kind::partial, m}; }
    static PathSelection selective(int m) { return {Kind::selective, m}; }
};

struct RakeCombiner
{
    std::vector<double> beta;
    CombiningScheme scheme = CombiningScheme::mrc;
    PathSelection selection;
};

// MRC: beta_l = alpha_l, EGC: beta_l = sign(alpha_l) on the utilized paths, zero elsewhere.
RakeCombiner select_combiner(const ChannelRealization &chan, CombiningScheme scheme, PathSelection selection);

// Adds (1/sqrt N_f) sum_j d_j b_{j/N_f} shape_{j mod N_p}(t - j T_f - c_j T_c) to `target`,
// with frame 0 of the block at global sample index `origin`. Samples falling outside the
// target span are dropped.
void superimpose_block(Waveform &target, const SystemConfig &config, std::span<const Waveform> shapes,
                       std::span<const int> bits, const CodeSequences &codes, std::ptrdiff_t origin);

// The transmitted (or, with channel composites as shapes, received) block for `bits`.
// The result spans exactly bits.size() symbols starting at the earliest shape sample, so
// consecutive symbols never share samples. Throws Errc::infeasible_geometry when a shape
// placed at the last TH chip would spill into the next frame.
Waveform transmit_block(const SystemConfig &config, std::span<const Waveform> shapes, std::span<const int> bits,
                        const CodeSequences &codes);
Waveform transmit_block(const SystemConfig &config, std::span<const Pulse> pulses, std::span<const int> bits,
                        const CodeSequences &codes);

enum class NoiseConvention
{
    continuous, // per-sample std sigma/sqrt(dt): two-sided PSD sigma^2
    per_sample  // per-sample std sigma (wrong for a continuous-time correlator, kept as a negative control)
};

// White Gaussian noise over [start, start + length) on the grid of spacing dt.
Waveform white_noise(std::ptrdiff_t start, std::size_t length, double dt, double sigma, CounterRng &rng,
                     NoiseConvention convention = NoiseConvention::continuous);

// Sum of per-user blocks shifted by their grid-snapped offsets tau_0^(k) plus white noise
// of level config.noise_sigma. The output spans blocks[0]. offsets[0] must be 0 and every
// offset must lie in [0, T_s).
Waveform compose_received(const SystemConfig &config, std::span<const Waveform> blocks,
                          std::span<const double> offsets, CounterRng &rng);

// sum_{j=iN_f}^{(i+1)N_f-1} d_j v_{j mod N_p}(t - j T_f - c_j T_c).
Waveform rake_template(const SystemConfig &config, const CodeSequences &codes, std::span<const Waveform> v,
                       std::size_t bit_index);

// dt * sum received * template over the common support. Detected bit is sign(Y).
double decision_statistic(const Waveform &received, const Waveform &tmpl);

// Number of grid samples a shape set reaches before its frame origin, i.e. -min(start).
std::ptrdiff_t leading_extent(std::span<const Waveform> shapes);

} // namespace mpir
