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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "omnr/grid.hpp"
#include "omnr/params.hpp"

namespace omnr {

enum class PresetName {
    Fig2One,
    Fig2Two,
    Fig3,
    Fig4One,
    Fig4Two,
    Fig5Resolved,
    Fig5Unresolved,
};

std::string_view to_string(PresetName name);
std::optional<PresetName> parse_preset_name(std::string_view text);
const std::vector<PresetName>& all_presets();

struct Preset {
    PresetName name;
    PhysicalConfig config;
    FrequencyGrid grid;
    /// Columns the corresponding figure panel plots.
    std::vector<std::string> outputs;
};

/// Thermal occupation used by every figure preset.
inline constexpr double kPresetThermalOccupation = 1e5;

Preset make_preset(PresetName name);

/// Grid for arbitrary configs: kappa_0 axis, linear +-60 gamma_m core and a
/// clustered wing out to +-3 kappa_0.
FrequencyGrid default_grid(const PhysicalConfig& cfg);

/// Throws ConfigError for an unknown name.
Preset make_preset(std::string_view name);

}  // namespace omnr
