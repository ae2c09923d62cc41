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

#include "fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>

namespace mpir::fft
{

namespace
{

struct FftwFree
{
    void operator()(void *p) const noexcept { fftw_free(p); }
};

template <typename T> using FftwBuffer = std::unique_ptr<T[], FftwFree>;

template <typename T> FftwBuffer<T> alloc(std::size_t n)
{
    return FftwBuffer<T>(static_cast<T *>(fftw_malloc(sizeof(T) * std::max<std::size_t>(n, 1))));
}

struct PlanPair
{
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
};

// FFTW's planner is not thread safe; execution with the new-array interface is.
class PlanCache
{
  public:
    ~PlanCache()
    {
        for (auto &[n, p] : plans_)
        {
            fftw_destroy_plan(p.forward);
            fftw_destroy_plan(p.backward);
        }
    }

    PlanPair get(std::size_t n)
    {
        std::lock_guard lock(mutex_);
        auto it = plans_.find(n);
        if (it != plans_.end())
            return it->second;
        auto r = alloc<double>(n);
        auto c = alloc<fftw_complex>(n / 2 + 1);
        PlanPair p;
        const int ni = static_cast<int>(n);
        p.forward = fftw_plan_dft_r2c_1d(ni, r.get(), c.get(), FFTW_ESTIMATE);
        p.backward = fftw_plan_dft_c2r_1d(ni, c.get(), r.get(), FFTW_ESTIMATE);
        plans_.emplace(n, p);
        return p;
    }

  private:
    std::mutex mutex_;
    std::map<std::size_t, PlanPair> plans_;
};

PlanCache &plans()
{
    static PlanCache cache;
    return cache;
}

} // namespace

std::size_t good_size(std::size_t n)
{
    for (std::size_t m = std::max<std::size_t>(n, 1);; ++m)
    {
        std::size_t r = m;
        for (std::size_t f : {2, 3, 5})
            while (r % f == 0)
                r /= f;
        if (r == 1)
            return m;
    }
}

std::vector<std::complex<double>> forward_real(std::span<const double> x, std::size_t n)
{
    const auto plan = plans().get(n);
    auto in = alloc<double>(n);
    auto out = alloc<fftw_complex>(n / 2 + 1);
    std::fill_n(in.get(), n, 0.0);
    std::copy_n(x.begin(), std::min(n, x.size()), in.get());
    fftw_execute_dft_r2c(plan.forward, in.get(), out.get());
    std::vector<std::complex<double>> result(n / 2 + 1);
    for (std::size_t k = 0; k < result.size(); ++k)
        result[k] = {out[k][0], out[k][1]};
    return result;
}

std::vector<double> cross_correlate(std::span<const double> a, std::span<const double> b)
{
    if (a.empty() || b.empty())
        return {};
    const std::size_t na = a.size(), nb = b.size();
    const std::size_t len = na + nb - 1;
    const std::size_t n = good_size(len);
    const auto plan = plans().get(n);

    // Reverse a so the correlation becomes a convolution: c[t] = sum_i a_rev[na-1-i] b[t-(na-1)+i].
    auto ra = alloc<double>(n), rb = alloc<double>(n);
    std::fill_n(ra.get(), n, 0.0);
    std::fill_n(rb.get(), n, 0.0);
    std::reverse_copy(a.begin(), a.end(), ra.get());
    std::copy(b.begin(), b.end(), rb.get());

    const std::size_t nc = n / 2 + 1;
    auto ca = alloc<fftw_complex>(nc), cb = alloc<fftw_complex>(nc);
    fftw_execute_dft_r2c(plan.forward, ra.get(), ca.get());
    fftw_execute_dft_r2c(plan.forward, rb.get(), cb.get());
    for (std::size_t k = 0; k < nc; ++k)
    {
        const double re = ca[k][0] * cb[k][0] - ca[k][1] * cb[k][1];
        const double im = ca[k][0] * cb[k][1] + ca[k][1] * cb[k][0];
        ca[k][0] = re;
        ca[k][1] = im;
    }
    fftw_execute_dft_c2r(plan.backward, ca.get(), ra.get());

    std::vector<double> out(len);
    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t t = 0; t < len; ++t)
        out[t] = ra[t] * scale;
    return out;
}

} // namespace mpir::fft
