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

#include "omnr/params.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "omnr/errors.hpp"

namespace omnr {

namespace {

constexpr cdouble kI{0.0, 1.0};

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) {
        throw ConfigError(std::string(name) + " must be finite");
    }
}

void require_non_negative(double v, const char* name) {
    require_finite(v, name);
    if (v < 0.0) {
        throw ConfigError(std::string(name) + " must be >= 0, got " + std::to_string(v));
    }
}

// -kappa/2 - i omega_m: the optical response denominator at the operating point.
cdouble optical_denominator(const PhysicalConfig& cfg) {
    return cdouble(-cfg.kappa() / 2.0, -cfg.omega_m);
}

}  // namespace

cdouble PhysicalConfig::g_l() const {
    if (g_l_explicit) {
        return *g_l_explicit;
    }
    return derive_g_l(*this);
}

void PhysicalConfig::validate() const {
    require_finite(omega_m, "omega_m");
    if (omega_m <= 0.0) {
        throw ConfigError("omega_m must be > 0");
    }
    require_finite(kappa_0, "kappa_0");
    if (kappa_0 != 1.0) {
        throw ConfigError("kappa_0 is the unit of all rates and must equal 1");
    }
    require_non_negative(kappa_ex, "kappa_ex");
    require_finite(delta_0, "delta_0");
    require_finite(j_s, "j_s");
    require_finite(j_m, "j_m");
    require_non_negative(gamma_0, "gamma_0");
    require_non_negative(gamma_in, "gamma_in");
    require_non_negative(n_th, "n_th");
    require_finite(g_r.real(), "g_r");
    require_finite(g_r.imag(), "g_r");
    if (g_l_explicit) {
        require_finite(g_l_explicit->real(), "g_l_mode");
        require_finite(g_l_explicit->imag(), "g_l_mode");
    }
}

cdouble derive_g_l(const PhysicalConfig& cfg) {
    return kI * cfg.j_s * cfg.g_r / optical_denominator(cfg);
}

BareSteadyState steady_state(const PhysicalConfig& cfg, cdouble pump, cdouble bare_g) {
    cfg.validate();
    const cdouble den = optical_denominator(cfg);
    const double detuning_offset = cfg.delta_0 - cfg.omega_m;

    BareSteadyState ss;
    ss.pump = pump;
    ss.bare_coupling = bare_g;
    ss.alpha_r = kI * pump / (den + cfg.j_s * cfg.j_s / den);
    ss.alpha_l = kI * cfg.j_s * ss.alpha_r / den;

    if (bare_g == cdouble(0.0, 0.0)) {
        if (detuning_offset != 0.0) {
            throw PreconditionError(
                "steady_state: bare coupling g = 0 cannot shift delta_0 onto omega_m");
        }
        ss.beta1_quadrature = 0.0;
    } else {
        // beta_1* + beta_1 is real, so only a real g makes the constraint consistent.
        const cdouble q = detuning_offset / bare_g;
        if (std::abs(q.imag()) > 1e-12 * std::max(1.0, std::abs(q))) {
            throw PreconditionError("steady_state: bare coupling g must be real when delta_0 != omega_m");
        }
        ss.beta1_quadrature = q.real();
    }
    ss.beta2 = -(cfg.effective_j_m() / cfg.omega_m) * ss.beta1_quadrature;
    return ss;
}

double steady_state_residual(const PhysicalConfig& cfg, const BareSteadyState& ss) {
    const double kappa = cfg.kappa();
    const cdouble g = ss.bare_coupling;
    const cdouble eff_detuning = cfg.delta_0 - g * ss.beta1_quadrature;

    const cdouble r1 = -kappa / 2.0 * ss.alpha_r - kI * eff_detuning * ss.alpha_r
                       - kI * cfg.j_s * ss.alpha_l - kI * ss.pump;
    const cdouble r2 = -kappa / 2.0 * ss.alpha_l - kI * eff_detuning * ss.alpha_l
                       - kI * cfg.j_s * ss.alpha_r;
    const cdouble r3 = cfg.omega_m - eff_detuning;
    const cdouble r4 = cfg.omega_m * ss.beta2 + cfg.effective_j_m() * ss.beta1_quadrature;
    return std::sqrt(std::norm(r1) + std::norm(r2) + std::norm(r3) + std::norm(r4));
}

PhysicalConfig with_steady_state(PhysicalConfig cfg, const BareSteadyState& ss) {
    cfg.g_r = ss.g_r();
    cfg.g_l_explicit = ss.g_l();
    return cfg;
}

double thermal_occupation(double omega_m_si, double temperature) {
    if (!(omega_m_si > 0.0) || !(temperature > 0.0)) {
        throw PreconditionError("thermal_occupation: frequency and temperature must be > 0");
    }
    const double x = kHbar * omega_m_si / (kBoltzmann * temperature);
    // expm1 keeps precision in the classical limit x -> 0.
    return 1.0 / std::expm1(x);
}

}  // namespace omnr
