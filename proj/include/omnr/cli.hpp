// Copyright 2026 The omnr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <ostream>
#include <string_view>

#include "omnr/grid.hpp"
#include "omnr/params.hpp"

namespace omnr {

/// Environment variable naming a directory for relative (or defaulted)
/// output paths.
inline constexpr const char* kOutputDirEnv = "OMNR_OUTPUT_DIR";

enum ExitCode : int {
    kExitOk = 0,
    kExitIo = 1,
    kExitUnstable = 2,
    kExitConfig = 3,
    kExitNumerical = 4,
};

/// Absolute frequency from an expression such as `omega=omega_m-J_m`,
/// `omega_m+0.5*gamma_m` or `4.99`. Symbols: omega_m, J_m, J_s, kappa_0,
/// kappa, gamma_m. Throws ConfigError on malformed input.
double parse_point(std::string_view expr, const PhysicalConfig& cfg);

/// `lo:hi:points[:units]` with units kappa0 or gamma_m; a single linear span.
FrequencyGrid parse_grid(std::string_view spec, const PhysicalConfig& cfg, AxisUnits fallback);

/// Full command-line driver. Results go to `out` (or files), structured
/// JSON errors to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace omnr
