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

#include <string_view>
#include <vector>

#include "omnr/params.hpp"

namespace omnr {

enum class Spacing { Linear, LogCluster };

/// x-axis unit: (omega - omega_m)/kappa_0 or (omega - omega_m)/gamma_m.
enum class AxisUnits { Kappa0, GammaM };

std::string_view to_string(AxisUnits u);

/// A block of grid offsets [lo, hi] in axis units. LogCluster places points
/// uniformly in asinh(offset / cluster_scale), which concentrates them near
/// offset 0 and thins them out geometrically in the wings.
struct GridSpan {
    double lo = 0.0;
    double hi = 0.0;
    int points = 0;
    Spacing spacing = Spacing::Linear;
    double cluster_scale = 0.0;  ///< LogCluster only; 0 selects 1e-3 * max(|lo|, |hi|)
};

struct FrequencyGrid {
    double center = 0.0;  ///< omega_m
    AxisUnits units = AxisUnits::Kappa0;
    double unit = 1.0;    ///< one axis unit in kappa_0
    std::vector<GridSpan> spans;
    std::vector<double> explicit_omegas;  ///< absolute frequencies added verbatim

    /// Strictly increasing merged absolute frequencies, duplicates removed.
    std::vector<double> omegas() const;
    double normalize(double omega) const { return (omega - center) / unit; }
};

/// Grid centred on omega_m with the unit implied by `units`.
FrequencyGrid make_grid(const PhysicalConfig& cfg, AxisUnits units, std::vector<GridSpan> spans = {});

}  // namespace omnr
