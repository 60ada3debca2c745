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
#include <vector>

#include "omnr/dynamics.hpp"
#include "omnr/grid.hpp"
#include "omnr/params.hpp"

namespace omnr {

/// U(omega) = (M - i omega I)^{-1} at one frequency.
struct Susceptibility {
    double omega = 0.0;
    Basis basis = Basis::Bare;
    Matrix8c u = Matrix8c::Zero();
    double residual = 0.0;   ///< max |(M - i omega I) U - I|
    double condition = 0.0;  ///< reciprocal of the LU rcond estimate

    /// 1-based element access matching the U_nm labels of the formulas.
    cdouble operator()(int n, int m) const { return u(n - 1, m - 1); }
};

/// Solves (M - i omega I) U = I column by column from one LU factorisation,
/// with one step of iterative refinement. Throws ResonantSingularityError
/// when the condition estimate exceeds 1e12.
Susceptibility susceptibility(const DriftSystem& sys, double omega);

/// A value for each port: R (left-to-right) and L (right-to-left).
struct PortPair {
    double r = 0.0;
    double l = 0.0;
};

/// T_R = |kappa_ex U11 - 1|^2 + kappa_ex^2 |U15|^2 and the L analogue.
/// Same index pattern in either basis.
PortPair transmission(const Susceptibility& u, double kappa_ex);

/// R_R = kappa_ex^2 (|U12|^2 + |U16|^2), R_L = kappa_ex^2 (|U21|^2 + |U25|^2).
PortPair reflection(const Susceptibility& u, double kappa_ex);

/// Bare-basis thermal spectra per thermal phonon (divide-out N_th).
struct ThermalSpectrum {
    double s_r_th = 0.0;
    double s_l_th = 0.0;
    double s1 = 0.0;  ///< R-port noise routed through b_1
    double s2 = 0.0;  ///< R-port noise routed through b_2
};

/// The common-reservoir term keeps the coherent sum |U13 + U14|^2: this
/// is where the two noise paths interfere. Throws PreconditionError for a
/// supermode-basis susceptibility.
ThermalSpectrum thermal_spectrum(const Susceptibility& u, const PhysicalConfig& cfg);

/// Bright/dark thermal spectra per thermal phonon.
struct SupermodeThermal {
    double s_plus = 0.0;     ///< R port, bright mode
    double s_minus = 0.0;    ///< R port, dark mode
    double s_plus_l = 0.0;   ///< L port, bright mode
    double s_minus_l = 0.0;  ///< L port, dark mode

    double s_r_th() const { return s_plus + s_minus; }
    double s_l_th() const { return s_plus_l + s_minus_l; }
};

/// Throws PreconditionError for a bare-basis susceptibility.
SupermodeThermal supermode_thermal(const Susceptibility& u, const PhysicalConfig& cfg);

/// Vacuum (zero-point) output noise, absolute. Uses the formula matching
/// the susceptibility's basis.
PortPair vacuum_spectrum(const Susceptibility& u, const PhysicalConfig& cfg);

/// 10 log10(t_r / t_l). Returns +inf for t_l == 0 < t_r and NaN when both
/// vanish; callers flag non-finite values.
double isolation_db(double t_r, double t_l);

/// Every spectrum at one frequency.
struct SpectraPoint {
    double omega = 0.0;
    double omega_norm = 0.0;
    double t_r = 0.0, t_l = 0.0;
    double r_r = 0.0, r_l = 0.0;
    double s_r_th = 0.0, s_l_th = 0.0;  ///< per N_th
    std::optional<double> s1, s2;       ///< bare basis only, per N_th
    std::optional<double> s_plus, s_minus;  ///< supermode basis only, per N_th
    double s_r_vac = 0.0, s_l_vac = 0.0;    ///< absolute
    double s_r_out = 0.0, s_l_out = 0.0;    ///< divided by SpectraBundle::out_scale
    double isolation_db = 0.0;
    bool isolation_flagged = false;  ///< isolation_db is not finite
    double residual = 0.0;           ///< inversion residual at this point
};

/// Output spectra for flat input spectra s_r_in / s_l_in:
/// S_R,out = T_R S_R,in + R_R S_L,in + N_th S_R,th + S_R,vac (and L).
/// Returns absolute values.
PortPair compose_output(const SpectraPoint& p, double n_th, double s_r_in, double s_l_in);

enum class SignalPort { None, R, L };

struct SweepOptions {
    bool allow_unstable = false;
    SignalPort signal = SignalPort::None;  ///< inject S_in = 1 at this port
    unsigned threads = 0;                  ///< 0 selects hardware concurrency
};

struct SpectraBundle {
    Basis basis = Basis::Bare;
    AxisUnits units = AxisUnits::Kappa0;
    double n_th = 0.0;
    /// s_r_out/s_l_out are stored divided by this: N_th, or 1 when N_th = 0.
    double out_scale = 1.0;
    double s_r_in = 0.0;
    double s_l_in = 0.0;
    bool unstable = false;  ///< swept despite an unstable drift matrix
    std::vector<SpectraPoint> points;
};

/// All spectra at one frequency.
SpectraPoint evaluate_point(const DriftSystem& sys, const PhysicalConfig& cfg, double omega,
                            double s_r_in = 0.0, double s_l_in = 0.0);

/// Evaluates every grid frequency independently (possibly in parallel) and
/// gathers in grid order. Throws UnstableSystemError for unstable systems
/// unless opts.allow_unstable, and propagates ResonantSingularityError.
SpectraBundle sweep(const DriftSystem& sys, const PhysicalConfig& cfg, const FrequencyGrid& grid,
                    const SweepOptions& opts = {});

}  // namespace omnr
