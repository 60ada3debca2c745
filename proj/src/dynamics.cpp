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

#include "omnr/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "omnr/errors.hpp"

namespace omnr {

namespace {

constexpr cdouble kI{0.0, 1.0};

std::vector<NoiseChannel> optical_channels(const PhysicalConfig& cfg) {
    return {
        {ChannelId::OptInR, cfg.kappa_ex, 0.0, true},
        {ChannelId::OptVacR, cfg.kappa_0, 0.0, false},
        {ChannelId::OptInL, cfg.kappa_ex, 0.0, true},
        {ChannelId::OptVacL, cfg.kappa_0, 0.0, false},
    };
}

// Places `weight` on channel `c` in `row` and the conjugate weight in the
// partner row (the xi^+ component).
void couple(InputMap& map, int row, int c, double weight) {
    map(row, c) = weight;
    map(idx::partner(row), c) = weight;
}

void couple_optics(InputMap& map, const PhysicalConfig& cfg) {
    const double ex = std::sqrt(cfg.kappa_ex);
    const double in = std::sqrt(cfg.kappa_0);
    couple(map, idx::kAR, 0, ex);
    couple(map, idx::kAR, 1, in);
    couple(map, idx::kAL, 2, ex);
    couple(map, idx::kAL, 3, in);
}

}  // namespace

std::string_view to_string(Basis b) {
    return b == Basis::Bare ? "bare" : "supermode";
}

std::string_view to_string(ChannelId id) {
    switch (id) {
        case ChannelId::OptInR: return "opt_in_r";
        case ChannelId::OptVacR: return "opt_vac_r";
        case ChannelId::OptInL: return "opt_in_l";
        case ChannelId::OptVacL: return "opt_vac_l";
        case ChannelId::MechCommon: return "mech_common";
        case ChannelId::MechPrivate1: return "mech_private_1";
        case ChannelId::MechPrivate2: return "mech_private_2";
        case ChannelId::SupBrightPrivate: return "sup_bright_private";
        case ChannelId::SupDarkPrivate: return "sup_dark_private";
    }
    return "unknown";
}

int DriftSystem::channel_index(ChannelId id) const {
    for (std::size_t c = 0; c < channels.size(); ++c) {
        if (channels[c].id == id) {
            return static_cast<int>(c);
        }
    }
    return -1;
}

DriftSystem build_bare(const PhysicalConfig& cfg) {
    cfg.validate();
    const double w = cfg.omega_m;
    const double k2 = cfg.kappa() / 2.0;
    const double js = cfg.j_s;
    const cdouble gr = cfg.g_r;
    const cdouble gl = cfg.g_l();
    const cdouble grc = std::conj(gr);
    const cdouble glc = std::conj(gl);
    const bool two = cfg.two_resonators;
    const double jm = cfg.effective_j_m();
    const double g0 = two ? cfg.gamma_0 : 0.0;  // dissipative b1-b2 coupling
    const double gm2 = cfg.gamma_m() / 2.0;
    const double b2_decay = two ? gm2 : cfg.gamma_in / 2.0;

    DriftSystem sys;
    sys.basis = Basis::Bare;
    Matrix8c& m = sys.m;
    m.setZero();

    // da_R
    m(0, 0) = kI * w + k2;
    m(0, 1) = kI * js;
    m(0, 2) = -kI * gr;
    m(0, 6) = -kI * gr;
    // da_L
    m(1, 0) = kI * js;
    m(1, 1) = kI * w + k2;
    m(1, 2) = -kI * gl;
    m(1, 6) = -kI * gl;
    // db_1
    m(2, 0) = -kI * grc;
    m(2, 1) = -kI * glc;
    m(2, 2) = kI * w + gm2;
    m(2, 3) = kI * jm + g0 / 2.0;
    m(2, 4) = -kI * gr;
    m(2, 5) = -kI * gl;
    m(2, 7) = kI * jm;
    // db_2
    m(3, 2) = kI * jm + g0 / 2.0;
    m(3, 3) = kI * w + b2_decay;
    m(3, 6) = kI * jm;
    // da_R^+
    m(4, 2) = kI * grc;
    m(4, 4) = k2 - kI * w;
    m(4, 5) = -kI * js;
    m(4, 6) = kI * grc;
    // da_L^+
    m(5, 2) = kI * glc;
    m(5, 4) = -kI * js;
    m(5, 5) = k2 - kI * w;
    m(5, 6) = kI * glc;
    // db_1^+
    m(6, 0) = kI * grc;
    m(6, 1) = kI * glc;
    m(6, 3) = -kI * jm;
    m(6, 4) = kI * gr;
    m(6, 5) = kI * gl;
    m(6, 6) = gm2 - kI * w;
    m(6, 7) = -kI * jm + g0 / 2.0;
    // db_2^+
    m(7, 2) = -kI * jm;
    m(7, 6) = -kI * jm + g0 / 2.0;
    m(7, 7) = b2_decay - kI * w;

    sys.channels = optical_channels(cfg);
    sys.channels.push_back({ChannelId::MechCommon, cfg.gamma_0, cfg.n_th, false});
    sys.channels.push_back({ChannelId::MechPrivate1, cfg.gamma_in, cfg.n_th, false});
    sys.channels.push_back({ChannelId::MechPrivate2, cfg.gamma_in, cfg.n_th, false});

    sys.input_map = InputMap::Zero(8, static_cast<Eigen::Index>(sys.channels.size()));
    couple_optics(sys.input_map, cfg);
    const double common = std::sqrt(cfg.gamma_0);
    const double priv = std::sqrt(cfg.gamma_in);
    couple(sys.input_map, idx::kB1, 4, common);
    couple(sys.input_map, idx::kB1, 5, priv);
    if (two) {
        couple(sys.input_map, idx::kB2, 4, common);
    }
    couple(sys.input_map, idx::kB2, 6, priv);
    return sys;
}

DriftSystem build_supermode(const PhysicalConfig& cfg) {
    cfg.validate();
    if (!cfg.two_resonators) {
        throw PreconditionError("build_supermode: supermodes need two mechanical resonators");
    }
    const double w = cfg.omega_m;
    const double k2 = cfg.kappa() / 2.0;
    const double js = cfg.j_s;
    const cdouble gr = cfg.g_r / std::sqrt(2.0);
    const cdouble gl = cfg.g_l() / std::sqrt(2.0);
    const cdouble grc = std::conj(gr);
    const cdouble glc = std::conj(gl);
    const double gamma_plus = cfg.gamma_in + 2.0 * cfg.gamma_0;
    const double w_plus = w + cfg.j_m;
    const double w_minus = w - cfg.j_m;

    DriftSystem sys;
    sys.basis = Basis::Supermode;
    Matrix8c& m = sys.m;
    m.setZero();

    // da_R
    m(0, 0) = k2 + kI * w;
    m(0, 1) = kI * js;
    m(0, 2) = m(0, 3) = m(0, 6) = m(0, 7) = -kI * gr;
    // da_L
    m(1, 0) = kI * js;
    m(1, 1) = k2 + kI * w;
    m(1, 2) = m(1, 3) = m(1, 6) = m(1, 7) = -kI * gl;
    // db_+
    m(2, 0) = -kI * grc;
    m(2, 1) = -kI * glc;
    m(2, 2) = gamma_plus / 2.0 + kI * w_plus;
    m(2, 4) = -kI * gr;
    m(2, 5) = -kI * gl;
    // db_-
    m(3, 0) = -kI * grc;
    m(3, 1) = -kI * glc;
    m(3, 3) = cfg.gamma_in / 2.0 + kI * w_minus;
    m(3, 4) = -kI * gr;
    m(3, 5) = -kI * gl;
    // da_R^+
    m(4, 2) = m(4, 3) = m(4, 6) = m(4, 7) = kI * grc;
    m(4, 4) = k2 - kI * w;
    m(4, 5) = -kI * js;
    // da_L^+
    m(5, 2) = m(5, 3) = m(5, 6) = m(5, 7) = kI * glc;
    m(5, 4) = -kI * js;
    m(5, 5) = k2 - kI * w;
    // db_+^+
    m(6, 0) = kI * grc;
    m(6, 1) = kI * glc;
    m(6, 4) = kI * gr;
    m(6, 5) = kI * gl;
    m(6, 6) = gamma_plus / 2.0 - kI * w_plus;
    // db_-^+
    m(7, 0) = kI * grc;
    m(7, 1) = kI * glc;
    m(7, 4) = kI * gr;
    m(7, 5) = kI * gl;
    m(7, 7) = cfg.gamma_in / 2.0 - kI * w_minus;

    sys.channels = optical_channels(cfg);
    sys.channels.push_back({ChannelId::MechCommon, cfg.gamma_0, cfg.n_th, false});
    sys.channels.push_back({ChannelId::SupBrightPrivate, cfg.gamma_in, cfg.n_th, false});
    sys.channels.push_back({ChannelId::SupDarkPrivate, cfg.gamma_in, cfg.n_th, false});

    sys.input_map = InputMap::Zero(8, static_cast<Eigen::Index>(sys.channels.size()));
    couple_optics(sys.input_map, cfg);
    // The dark mode sees no common-reservoir noise; the bright mode sees it
    // with sqrt(2) enhanced amplitude.
    couple(sys.input_map, idx::kBright, 4, std::sqrt(2.0 * cfg.gamma_0));
    couple(sys.input_map, idx::kBright, 5, std::sqrt(cfg.gamma_in));
    couple(sys.input_map, idx::kDark, 6, std::sqrt(cfg.gamma_in));
    return sys;
}

DriftSystem build(const PhysicalConfig& cfg, Basis basis) {
    return basis == Basis::Bare ? build_bare(cfg) : build_supermode(cfg);
}

Matrix8c swap_conjugate_blocks(const Matrix8c& x) {
    Matrix8c out;
    out.topLeftCorner<4, 4>() = x.bottomRightCorner<4, 4>();
    out.topRightCorner<4, 4>() = x.bottomLeftCorner<4, 4>();
    out.bottomLeftCorner<4, 4>() = x.topRightCorner<4, 4>();
    out.bottomRightCorner<4, 4>() = x.topLeftCorner<4, 4>();
    return out;
}

StabilityReport check_stability(const DriftSystem& sys) {
    Eigen::ComplexEigenSolver<Matrix8c> solver(sys.m, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw EigenSolverError("check_stability: eigenvalue iteration did not converge");
    }
    StabilityReport report;
    const auto& ev = solver.eigenvalues();
    report.eigenvalues.assign(ev.data(), ev.data() + ev.size());
    std::sort(report.eigenvalues.begin(), report.eigenvalues.end(), [](cdouble a, cdouble b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    double max_abs = 0.0;
    for (const cdouble& l : report.eigenvalues) {
        max_abs = std::max(max_abs, std::abs(l));
    }
    report.min_real_part = report.eigenvalues.front().real();
    report.tolerance = 1e-12 * max_abs;
    report.stable = report.min_real_part > report.tolerance;
    return report;
}

}  // namespace omnr
