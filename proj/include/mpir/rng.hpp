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

#include <array>
#include <cstdint>
#include <limits>

namespace mpir
{

// Philox4x32-10 (Salmon et al., SC'11) exposed as a 64-bit UniformRandomBitGenerator.
//
// The key is the master seed; the upper half of the 128-bit counter holds a stream id
// and the lower half is the block index within that stream. Distinct stream ids give
// statistically independent sequences, so every unit of parallel work can own its
// generator and results do not depend on scheduling.
class CounterRng
{
  public:
    using result_type = std::uint64_t;

    CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept;

    // Skip `blocks` 128-bit blocks ahead.
    void discard_blocks(std::uint64_t blocks) noexcept;

    // Single Philox4x32-10 evaluation, exposed for known-answer tests.
    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> counter,
                                              std::array<std::uint32_t, 2> key) noexcept;

  private:
    void refill() noexcept;

    std::array<std::uint32_t, 2> key_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> out_{};
    int next_ = 2;
};

// Roles of the random streams drawn for one realization. Values are part of the
// reproducibility contract; append only.
enum class StreamRole : std::uint8_t
{
    desired_channel = 1,
    interferer_channel = 2,
    offsets = 3,
    codes = 4,
    bits = 5,
    noise = 6,
    mai_oracle = 7,
    noise_oracle = 8,
    psd_signal = 9,
    channel_stats = 10,
    generic = 11
};

// Packs (index, role, sub) into a stream id. index < 2^40, sub < 2^16.
std::uint64_t stream_id(std::uint64_t index, StreamRole role, std::uint32_t sub = 0);

inline CounterRng make_rng(std::uint64_t seed, std::uint64_t index, StreamRole role, std::uint32_t sub = 0)
{
    return CounterRng(seed, stream_id(index, role, sub));
}

} // namespace mpir
