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

#include <complex>
#include <optional>
#include <string_view>

namespace omnr {

using cdouble = std::complex<double>;

/// Physical parameters of the optomechanical network. Every rate and
/// frequency is expressed in units of the intrinsic optical decay kappa_0,
/// which is therefore fixed to 1.
///
/// The optical detuning entering the linearised dynamics is the effective
/// detuning, which the operating point pins to omega_m; delta_0 is the bare
/// pump detuning and only matters for the mean-field displacement.
struct PhysicalConfig {
    double omega_m = 1.0;   ///< mechanical frequency
    double kappa_0 = 1.0;   ///< intrinsic optical decay (the unit)
    double kappa_ex = 1.0;  ///< external (fibre) optical decay
    double delta_0 = 1.0;   ///< pump detuning omega_c - omega_p
    double j_s = 0.0;       ///< backscattering between a_R and a_L
    double j_m = 0.0;       ///< direct mechanical-mechanical coupling
    double gamma_0 = 0.0;   ///< decay into the common reservoir
    double gamma_in = 0.0;  ///< decay into each private reservoir
    cdouble g_r{0.0, 0.0};  ///< effective coupling G_R = g alpha_R
    /// Explicit G_L; when empty G_L is derived from G_R and J_s.
    std::optional<cdouble> g_l_explicit;
    double n_th = 0.0;      ///< thermal phonon occupation
    bool two_resonators = true;

    /// Total optical decay kappa_ex + kappa_0.
    double kappa() const noexcept { return kappa_ex + kappa_0; }
    /// Total mechanical decay gamma_0 + gamma_in.
    double gamma_m() const noexcept { return gamma_0 + gamma_in; }
    /// Mechanical coupling as seen by the dynamics (zero without b2).
    double effective_j_m() const noexcept { return two_resonators ? j_m : 0.0; }
    /// Counter-propagating coupling: explicit value or the derived one.
    cdouble g_l() const;

    /// Throws ConfigError when an invariant is violated.
    void validate() const;

    friend bool operator==(const PhysicalConfig&, const PhysicalConfig&) = default;
};

/// G_L = i J_s G_R / (-kappa/2 - i omega_m), the coupling induced on the
/// counter-propagating mode by backscattering of the pump.
cdouble derive_g_l(const PhysicalConfig& cfg);

/// Mean-field amplitudes under the factorisation assumption.
struct BareSteadyState {
    cdouble alpha_r;
    cdouble alpha_l;
    double beta1_quadrature = 0.0;  ///< beta_1* + beta_1
    cdouble beta2;
    cdouble pump;           ///< Omega
    cdouble bare_coupling;  ///< single-photon g

    cdouble g_r() const { return bare_coupling * alpha_r; }
    cdouble g_l() const { return bare_coupling * alpha_l; }
};

/// Closed-form steady state for pump amplitude `pump` and single-photon
/// coupling `bare_g`, at the operating point where the effective detuning
/// equals omega_m. Throws PreconditionError if bare_g == 0 while
/// delta_0 != omega_m.
BareSteadyState steady_state(const PhysicalConfig& cfg, cdouble pump, cdouble bare_g);

/// Residuals of the mean-field balance relations evaluated at `ss`:
/// the two optical equations, the detuning constraint and the undamped b2
/// balance. Returns the Euclidean norm of the four residuals.
double steady_state_residual(const PhysicalConfig& cfg, const BareSteadyState& ss);

/// Copy of `cfg` whose couplings come from a solved steady state
/// (G_R = g alpha_R, G_L = g alpha_L explicitly).
PhysicalConfig with_steady_state(PhysicalConfig cfg, const BareSteadyState& ss);

/// Bose-Einstein occupation 1 / (exp(hbar w / k_B T) - 1), SI inputs.
double thermal_occupation(double omega_m_si, double temperature);

/// Physical constants used by thermal_occupation (CODATA 2018, exact).
inline constexpr double kHbar = 1.054571817e-34;
inline constexpr double kBoltzmann = 1.380649e-23;

}  // namespace omnr
