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

#include <filesystem>
#include <string>
#include <string_view>

#include "omnr/params.hpp"

namespace omnr {

// Config files are flat `key = value` text, one pair per line, `#` starts a
// comment. Keys are the PhysicalConfig field names:
//
//   omega_m kappa_0 kappa_ex delta_0 j_s j_m gamma_0 gamma_in
//   g_r g_l_mode n_th two_resonators
//
// Complex values are written `re+imj` (e.g. `0.1`, `0.1+0j`, `-2e-3j`).
// g_l_mode is either `derived` or a complex value. kappa_0, delta_0 and
// g_l_mode are optional (defaults: 1, omega_m, derived); all other keys
// are required. Unknown or repeated keys are errors.

PhysicalConfig parse_config(std::string_view text);
PhysicalConfig load_config(const std::filesystem::path& path);

/// Inverse of parse_config; doubles are written with 17 significant digits.
std::string format_config(const PhysicalConfig& cfg);

cdouble parse_complex(std::string_view text);
std::string format_complex(cdouble z);

/// Shortest-exact (17 significant digit) text for a double.
std::string format_double(double v);

}  // namespace omnr
