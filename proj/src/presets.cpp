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


#include "omnr/presets.hpp"

#include <array>

#include "omnr/errors.hpp"

namespace omnr {

namespace {

struct NamedPreset {
    PresetName name;
    std::string_view text;
};

constexpr std::array<NamedPreset, 7> kNames{{
    {PresetName::Fig2One, "fig2_one"},
    {PresetName::Fig2Two, "fig2_two"},
    {PresetName::Fig3, "fig3"},
    {PresetName::Fig4One, "fig4_one"},
    {PresetName::Fig4Two, "fig4_two"},
    {PresetName::Fig5Resolved, "fig5_resolved"},
    {PresetName::Fig5Unresolved, "fig5_unresolved"},
}};

// Shared by every figure: kappa_ex = kappa_0, Delta_0 = omega_m,
// gamma_0 = omega_m/1e4, gamma_1 = gamma_2 = omega_m/1e8.
PhysicalConfig base_config(double omega_m, double g_r, double j_m, double j_s, bool two) {
    PhysicalConfig cfg;
    cfg.omega_m = omega_m;
    cfg.kappa_0 = 1.0;
    cfg.kappa_ex = 1.0;
    cfg.delta_0 = omega_m;
    cfg.j_s = j_s;
    cfg.j_m = j_m;
    cfg.gamma_0 = omega_m / 1e4;
    cfg.gamma_in = omega_m / 1e8;
    cfg.g_r = g_r;
    cfg.n_th = kPresetThermalOccupation;
    cfg.two_resonators = two;
    return cfg;
}

PhysicalConfig resolved(bool two) { return base_config(5.0, 0.1, 0.01, 0.1, two); }
PhysicalConfig unresolved(bool two) { return base_config(0.1, 0.01, 2e-4, 0.1, two); }

// Linear core over +-60 gamma_m around omega_m plus a sinh-clustered wing
// reaching `wing` kappa_0 out.
FrequencyGrid kappa_axis_grid(const PhysicalConfig& cfg, double wing) {
    const double core = 60.0 * cfg.gamma_m() / cfg.kappa_0;
    return make_grid(cfg, AxisUnits::Kappa0,
                     {{-core, core, 4001, Spacing::Linear, 0.0},
                      {-wing, wing, 801, Spacing::LogCluster, core}});
}

FrequencyGrid gamma_axis_grid(const PhysicalConfig& cfg, double half_width, double wing_kappa) {
    std::vector<GridSpan> spans{{-half_width, half_width, 4001, Spacing::Linear, 0.0}};
    if (wing_kappa > 0.0) {
        const double wing = wing_kappa * cfg.kappa_0 / cfg.gamma_m();
        spans.push_back({-wing, wing, 801, Spacing::LogCluster, half_width});
    }
    return make_grid(cfg, AxisUnits::GammaM, std::move(spans));
}

const std::vector<std::string> kTransmissionColumns{"T_R", "T_L", "S_R_out"};

}  // namespace

std::string_view to_string(PresetName name) {
    for (const auto& n : kNames) {
        if (n.name == name) {
            return n.text;
        }
    }
    return "unknown";
}

std::optional<PresetName> parse_preset_name(std::string_view text) {
    for (const auto& n : kNames) {
        if (n.text == text) {
            return n.name;
        }
    }
    return std::nullopt;
}

const std::vector<PresetName>& all_presets() {
    static const std::vector<PresetName> names = [] {
        std::vector<PresetName> out;
        for (const auto& n : kNames) {
            out.push_back(n.name);
        }
        return out;
    }();
    return names;
}

Preset make_preset(PresetName name) {
    Preset p{name, {}, {}, {}};
    switch (name) {
        case PresetName::Fig2One:
        case PresetName::Fig2Two:
            p.config = resolved(name == PresetName::Fig2Two);
            p.grid = kappa_axis_grid(p.config, 3.0);
            p.outputs = kTransmissionColumns;
            break;
        case PresetName::Fig3:
            p.config = resolved(true);
            p.grid = gamma_axis_grid(p.config, 40.0, 0.0);
            p.outputs = {"S1", "S2", "S_R_th"};
            break;
        case PresetName::Fig4One:
        case PresetName::Fig4Two:
            p.config = unresolved(name == PresetName::Fig4Two);
            p.grid = kappa_axis_grid(p.config, 1.0);
            p.outputs = kTransmissionColumns;
            break;
        case PresetName::Fig5Resolved:
            p.config = resolved(true);
            p.config.j_s = 1.0;
            p.grid = gamma_axis_grid(p.config, 60.0, 3.0);
            p.outputs = {"T_R", "T_L", "S_R_out", "S1", "S2"};
            break;
        case PresetName::Fig5Unresolved:
            p.config = unresolved(true);
            p.config.j_s = 0.45;
            p.grid = gamma_axis_grid(p.config, 60.0, 1.0);
            p.outputs = {"T_R", "T_L", "S_R_out", "S1", "S2"};
            break;
    }
    return p;
}

FrequencyGrid default_grid(const PhysicalConfig& cfg) {
    return kappa_axis_grid(cfg, 3.0);
}

Preset make_preset(std::string_view name) {
    const auto parsed = parse_preset_name(name);
    if (!parsed) {
        throw ConfigError("unknown preset '" + std::string(name) + "'");
    }
    return make_preset(*parsed);
}

}  // namespace omnr
