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

#include "mpir/rng.hpp"

#include "mpir/errors.hpp"

namespace mpir
{

namespace
{

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void round(std::array<std::uint32_t, 4> &ctr, const std::array<std::uint32_t, 2> &key) noexcept
{
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

} // namespace

std::array<std::uint32_t, 4> CounterRng::block(std::array<std::uint32_t, 4> counter,
                                               std::array<std::uint32_t, 2> key) noexcept
{
    for (int r = 0; r < 10; ++r)
    {
        if (r > 0)
        {
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        round(counter, key);
    }
    return counter;
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)}, stream_(stream)
{
}

void CounterRng::refill() noexcept
{
    out_ = block({static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
                  static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)},
                 key_);
    ++block_;
    next_ = 0;
}

CounterRng::result_type CounterRng::operator()() noexcept
{
    if (next_ == 2)
        refill();
    const int i = 2 * next_++;
    return static_cast<std::uint64_t>(out_[i]) | (static_cast<std::uint64_t>(out_[i + 1]) << 32);
}

void CounterRng::discard_blocks(std::uint64_t blocks) noexcept
{
    block_ += blocks;
    next_ = 2;
}

std::uint64_t stream_id(std::uint64_t index, StreamRole role, std::uint32_t sub)
{
    if (index >= (std::uint64_t{1} << 40) || sub >= (1u << 16))
        throw Error(Errc::invalid_parameter, "stream index out of range");
    return (index << 24) | (static_cast<std::uint64_t>(role) << 16) | sub;
}

} // namespace mpir
