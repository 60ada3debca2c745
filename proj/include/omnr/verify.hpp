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

#include <array>
#include <span>
#include <vector>

#include "omnr/dynamics.hpp"
#include "omnr/grid.hpp"
#include "omnr/params.hpp"

// Independent checks on the frequency-domain engine. They share the noise
// model (input map and channel occupations) with the spectra code but reach
// their answers by a different route: the stationary Lyapunov equation and
// frequency quadrature instead of per-frequency output formulas.

namespace omnr {

/// White-noise strength <V_in(t) V_in(t')^+> = D delta(t - t').
/// Thermal channels carry <xi xi^+> = N_th + 1 and <xi^+ xi> = N_th.
struct DiffusionMatrix {
    Matrix8c d = Matrix8c::Zero();
};

DiffusionMatrix diffusion_matrix(const DriftSystem& sys);

/// Normally ordered noise strength N_jk = <V_in,j^+ V_in,k>, the weight
/// that turns |U_ij|^2 into occupation spectra.
Matrix8c normal_ordered_noise(const DriftSystem& sys);

struct CovarianceReport {
    Matrix8c c = Matrix8c::Zero();  ///< C = <V V^+> in the stationary state
    double residual = 0.0;          ///< max |M C + C M^+ - D|
    double d_scale = 0.0;           ///< max |D|

    /// Normally ordered occupations <dx^+ dx> for x = a_R, a_L, b_1, b_2
    /// (or b_+, b_- in the supermode basis).
    std::array<double, 4> occupations() const;
};

/// Solves M C + C M^+ = D directly as a 64-unknown linear system.
/// Throws UnstableSystemError if M is not stable.
CovarianceReport lyapunov_covariance(const DriftSystem& sys);

/// Frequencies clustered around every resonance Im(lambda) of M with a
/// sinh-spaced density matched to its width Re(lambda), extending
/// `wing_factor` * max(1, max|lambda|) in both directions.
std::vector<double> pole_adapted_grid(const DriftSystem& sys, int points_per_pole = 4001,
                                      double wing_factor = 1e4);

struct ParsevalReport {
    std::array<double, 4> quadrature{};  ///< (1/2pi) int S(omega) d omega, wings extrapolated
    std::array<double, 4> lyapunov{};
    double max_mismatch = 0.0;   ///< max relative difference over the four modes
    double tail_fraction = 0.0;  ///< estimated mass outside the grid, relative
    std::size_t points = 0;  ///< frequencies evaluated, midpoints included
};

/// Compares frequency-integrated occupation spectra against the Lyapunov
/// covariance diagonal. Throws InsufficientCoverageError if the wings
/// suggest more than 1e-4 of the spectral mass lies outside the grid.
ParsevalReport parseval_check(const DriftSystem& sys, std::span<const double> omegas);
ParsevalReport parseval_check(const DriftSystem& sys);

struct SingleModeCheck {
    int local_maxima = 0;  ///< T_R maxima within the window around omega_m
    double peak_value = 0.0;
    double peak_omega = 0.0;
    bool s2_zero = false;  ///< b_2 noise path identically zero on the grid
    bool passed() const { return local_maxima == 1 && s2_zero; }
};

/// One-resonator reference: T_R must show a single transparency peak near
/// omega_m (window half-width min(omega_m, kappa)/2) and no b_2 noise path.
/// Throws PreconditionError for two-resonator configs.
SingleModeCheck limit_check_single_mode(const PhysicalConfig& cfg, const FrequencyGrid& grid);

/// Max relative difference of T_R between the bare and supermode bases at
/// omega_m - J_m and omega_m + J_m.
double basis_consistency(const PhysicalConfig& cfg);

}  // namespace omnr
