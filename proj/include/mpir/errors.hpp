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

#include <stdexcept>
#include <string>
#include <string_view>

namespace mpir
{

enum class Errc
{
    invalid_parameter,
    resolution,
    degenerate_input,
    grid_mismatch,
    config_mismatch,
    insufficient_data,
    infeasible_geometry,
    io,
    usage
};

std::string_view to_string(Errc code);

// All library failures are reported through this type; code() identifies the category.
class Error : public std::runtime_error
{
  public:
    Error(Errc code, const std::string &what);
    Errc code() const noexcept { return code_; }

  private:
    Errc code_;
};

} // namespace mpir
