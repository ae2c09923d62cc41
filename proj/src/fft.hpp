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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

// Thin FFTW wrappers. Plans are cached per length and shared between threads.
namespace mpir::fft
{

// Non-negative-frequency half of the length-n DFT of x (zero padded): n/2+1 bins,
// X[k] = sum_i x[i] exp(-j 2 pi k i / n).
std::vector<std::complex<double>> forward_real(std::span<const double> x, std::size_t n);

// Linear cross-correlation c[s + na - 1] = sum_i a[i] b[i + s], s in [-(na-1), nb-1].
// Same indexing as the direct sum, computed through a zero-padded FFT.
std::vector<double> cross_correlate(std::span<const double> a, std::span<const double> b);

// Smallest size >= n of the form 2^a 3^b 5^c.
std::size_t good_size(std::size_t n);

} // namespace mpir::fft
