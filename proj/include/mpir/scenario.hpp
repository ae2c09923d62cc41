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
#include "mpir/system_config.hpp"
#include "mpir/transceiver.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace mpir
{

struct CombinerSpec
{
    CombiningScheme scheme = CombiningScheme::mrc;
    PathSelection selection;
};

// Everything random about one channel realization of the K-user link: the desired
// user's channel, K-1 interferer channels and their asynchronism.
struct LinkScenario
{
    ChannelRealization desired;
    std::vector<ChannelRealization> interferers;
    std::vector<std::ptrdiff_t> offsets; // tau_0^(k) in samples, offsets[0] = 0
    RejectionStats rejection;
};

// Draws realization `index` from streams keyed by (seed, index, role). The desired user
// has unit mean channel energy, interferers config.interferer_power; params.power_scale
// is ignored. Offsets are uniform over the symbol's grid samples.
LinkScenario draw_scenario(const SystemConfig &config, const ChannelParams &params, double dt, std::uint64_t seed,
                           std::uint64_t index);

// Per pulse type composites: u_j for every user (received pulse through its channel) and
// the desired user's RAKE template frame v_j.
struct LinkWaveforms
{
    std::vector<Waveform> desired_u;
    std::vector<Waveform> template_v;
    std::vector<std::vector<Waveform>> interferer_u;
    RakeCombiner combiner;
};

LinkWaveforms build_link_waveforms(const LinkScenario &scenario, std::span<const Pulse> pulses,
                                   const CombinerSpec &combiner);

} // namespace mpir
