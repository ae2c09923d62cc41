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

#include "mpir/errors.hpp"

namespace mpir
{

std::string_view to_string(Errc code)
{
    switch (code)
    {
    case Errc::invalid_parameter:
        return "invalid parameter";
    case Errc::resolution:
        return "resolution";
    case Errc::degenerate_input:
        return "degenerate input";
    case Errc::grid_mismatch:
        return "grid mismatch";
    case Errc::config_mismatch:
        return "config mismatch";
    case Errc::insufficient_data:
        return "insufficient data";
    case Errc::infeasible_geometry:
        return "infeasible geometry";
    case Errc::io:
        return "io";
    case Errc::usage:
        return "usage";
    }
    return "unknown";
}

Error::Error(Errc code, const std::string &what)
    : std::runtime_error(std::string(to_string(code)) + " error: " + what), code_(code)
{
}

} // namespace mpir
