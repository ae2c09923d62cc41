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

#include "mpir/scenario.hpp"

#include "mpir/errors.hpp"
#include "mpir/rng.hpp"

#include <random>

namespace mpir
{

LinkScenario draw_scenario(const SystemConfig &config, const ChannelParams &params, double dt, std::uint64_t seed,
                           std::uint64_t index)
{
    const auto grid = SampleGrid::make(config, dt);
    LinkScenario s;

    ChannelParams desired = params;
    desired.power_scale = 1.0;
    auto rng = make_rng(seed, index, StreamRole::desired_channel);
    s.desired = sample_channel(desired, config, rng, &s.rejection);

    ChannelParams interferer = params;
    interferer.power_scale = config.interferer_power;
    s.interferers.reserve(static_cast<std::size_t>(config.users - 1));
    for (int k = 1; k < config.users; ++k)
    {
        auto r = make_rng(seed, index, StreamRole::interferer_channel, static_cast<std::uint32_t>(k));
        s.interferers.push_back(sample_channel(interferer, config, r, &s.rejection));
    }

    auto orng = make_rng(seed, index, StreamRole::offsets);
    std::uniform_int_distribution<std::ptrdiff_t> offset(0, grid.symbol - 1);
    s.offsets.assign(static_cast<std::size_t>(config.users), 0);
    for (std::size_t k = 1; k < s.offsets.size(); ++k)
        s.offsets[k] = offset(orng);
    return s;
}

LinkWaveforms build_link_waveforms(const LinkScenario &scenario, std::span<const Pulse> pulses,
                                   const CombinerSpec &combiner)
{
    if (pulses.empty())
        throw Error(Errc::config_mismatch, "at least one pulse type is required");
    LinkWaveforms w;
    w.combiner = select_combiner(scenario.desired, combiner.scheme, combiner.selection);
    for (const auto &p : pulses)
    {
        w.desired_u.push_back(composite_waveform(p, scenario.desired, scenario.desired.gains));
        w.template_v.push_back(composite_waveform(p, scenario.desired, w.combiner.beta));
    }
    w.interferer_u.resize(scenario.interferers.size());
    for (std::size_t k = 0; k < scenario.interferers.size(); ++k)
        for (const auto &p : pulses)
            w.interferer_u[k].push_back(composite_waveform(p, scenario.interferers[k], scenario.interferers[k].gains));
    return w;
}

} // namespace mpir
