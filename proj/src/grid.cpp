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

#include "omnr/grid.hpp"

#include <algorithm>
#include <cmath>

#include "omnr/errors.hpp"

namespace omnr {

std::string_view to_string(AxisUnits u) {
    return u == AxisUnits::Kappa0 ? "kappa0" : "gamma_m";
}

std::vector<double> FrequencyGrid::omegas() const {
    std::vector<double> out;
    for (const GridSpan& s : spans) {
        if (s.points <= 0) {
            continue;
        }
        if (!(s.hi >= s.lo)) {
            throw PreconditionError("grid span must satisfy lo <= hi");
        }
        if (s.points == 1) {
            out.push_back(center + unit * 0.5 * (s.lo + s.hi));
            continue;
        }
        const int n = s.points;
        if (s.spacing == Spacing::Linear) {
            for (int i = 0; i < n; ++i) {
                const double x = s.lo + (s.hi - s.lo) * i / (n - 1);
                out.push_back(center + unit * x);
            }
        } else {
            const double scale = s.cluster_scale > 0.0
                                     ? s.cluster_scale
                                     : 1e-3 * std::max(std::abs(s.lo), std::abs(s.hi));
            if (!(scale > 0.0)) {
                throw PreconditionError("LogCluster span needs a non-zero extent");
            }
            const double t0 = std::asinh(s.lo / scale);
            const double t1 = std::asinh(s.hi / scale);
            for (int i = 0; i < n; ++i) {
                double x = scale * std::sinh(t0 + (t1 - t0) * i / (n - 1));
                if (i == 0) x = s.lo;
                if (i == n - 1) x = s.hi;
                out.push_back(center + unit * x);
            }
        }
    }
    out.insert(out.end(), explicit_omegas.begin(), explicit_omegas.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

FrequencyGrid make_grid(const PhysicalConfig& cfg, AxisUnits units, std::vector<GridSpan> spans) {
    FrequencyGrid grid;
    grid.center = cfg.omega_m;
    grid.units = units;
    grid.unit = units == AxisUnits::Kappa0 ? cfg.kappa_0 : cfg.gamma_m();
    if (!(grid.unit > 0.0)) {
        throw ConfigError("grid unit gamma_m must be > 0");
    }
    grid.spans = std::move(spans);
    return grid;
}

}  // namespace omnr
