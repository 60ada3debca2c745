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

#include "omnr/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/LU>

#include "omnr/errors.hpp"
#include "omnr/spectra.hpp"

namespace omnr {

namespace {

using Matrix64c = Eigen::Matrix<cdouble, Eigen::Dynamic, Eigen::Dynamic>;

// Channel weights of the xi (top rows) and xi^+ (bottom rows) components.
Eigen::VectorXd occupations_of(const DriftSystem& sys) {
    Eigen::VectorXd n(static_cast<Eigen::Index>(sys.channels.size()));
    for (std::size_t c = 0; c < sys.channels.size(); ++c) {
        n(static_cast<Eigen::Index>(c)) = sys.channels[c].occupation;
    }
    return n;
}

Matrix8c block_noise(const DriftSystem& sys, const Eigen::VectorXd& top, const Eigen::VectorXd& bottom) {
    const auto l_top = sys.input_map.topRows<4>();
    const auto l_bot = sys.input_map.bottomRows<4>();
    Matrix8c out = Matrix8c::Zero();
    out.topLeftCorner<4, 4>() = l_top * top.cast<cdouble>().asDiagonal() * l_top.adjoint();
    out.bottomRightCorner<4, 4>() = l_bot * bottom.cast<cdouble>().asDiagonal() * l_bot.adjoint();
    return out;
}

// Occupation spectra of the four modes at one frequency.
std::array<double, 4> mode_density(const DriftSystem& sys, const Matrix8c& noise, double omega) {
    const Susceptibility u = susceptibility(sys, omega);
    std::array<double, 4> out{};
    for (int k = 0; k < 4; ++k) {
        const Eigen::Matrix<cdouble, 1, 8> row = u.u.row(k);
        out[k] = (row.conjugate() * noise * row.transpose())(0, 0).real();
    }
    return out;
}

}  // namespace

DiffusionMatrix diffusion_matrix(const DriftSystem& sys) {
    const Eigen::VectorXd n = occupations_of(sys);
    return {block_noise(sys, n.array() + 1.0, n)};
}

Matrix8c normal_ordered_noise(const DriftSystem& sys) {
    const Eigen::VectorXd n = occupations_of(sys);
    // <V_j^+ V_k> = conj(<V_k V_j^+>) with the roles of n and n+1 swapped.
    return block_noise(sys, n, n.array() + 1.0).transpose();
}

std::array<double, 4> CovarianceReport::occupations() const {
    return {c(4, 4).real(), c(5, 5).real(), c(6, 6).real(), c(7, 7).real()};
}

CovarianceReport lyapunov_covariance(const DriftSystem& sys) {
    const StabilityReport stability = check_stability(sys);
    if (!stability.stable) {
        std::ostringstream msg;
        msg << "lyapunov_covariance: no stationary state, min Re(lambda) = " << stability.min_real_part;
        throw UnstableSystemError(msg.str(), stability.min_real_part);
    }
    const Matrix8c d = diffusion_matrix(sys).d;
    const Matrix8c& m = sys.m;

    // Column-major vec: vec(M C + C M^+) = (I (x) M + conj(M) (x) I) vec(C).
    Matrix64c op = Matrix64c::Zero(64, 64);
    for (int i = 0; i < 8; ++i) {
        for (int j = 0; j < 8; ++j) {
            op.block(8 * i, 8 * j, 8, 8) += std::conj(m(i, j)) * Matrix8c::Identity();
            if (i == j) {
                op.block(8 * i, 8 * j, 8, 8) += m;
            }
        }
    }
    const Eigen::PartialPivLU<Matrix64c> lu(op);
    const Eigen::Map<const Eigen::VectorXcd> rhs(d.data(), 64);
    Eigen::VectorXcd x = lu.solve(rhs);
    x += lu.solve(rhs - op * x);

    CovarianceReport report;
    report.c = Eigen::Map<const Matrix8c>(x.data());
    // Enforce the Hermitian part; the antihermitian remainder is rounding.
    report.c = 0.5 * (report.c + report.c.adjoint()).eval();
    report.residual = (m * report.c + report.c * m.adjoint() - d).cwiseAbs().maxCoeff();
    report.d_scale = d.cwiseAbs().maxCoeff();
    return report;
}

std::vector<double> pole_adapted_grid(const DriftSystem& sys, int points_per_pole, double wing_factor) {
    const StabilityReport stability = check_stability(sys);
    double max_abs = 1.0;
    for (const cdouble& l : stability.eigenvalues) {
        max_abs = std::max(max_abs, std::abs(l));
    }
    const double wing = wing_factor * max_abs;

    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(points_per_pole) * stability.eigenvalues.size() + 2);
    for (const cdouble& l : stability.eigenvalues) {
        const double center = l.imag();
        const double width = std::max(std::abs(l.real()), 1e-14 * max_abs);
        const double t_lo = std::asinh((-wing - center) / width);
        const double t_hi = std::asinh((wing - center) / width);
        for (int i = 0; i < points_per_pole; ++i) {
            const double t = t_lo + (t_hi - t_lo) * i / (points_per_pole - 1);
            out.push_back(center + width * std::sinh(t));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

ParsevalReport parseval_check(const DriftSystem& sys, std::span<const double> omegas) {
    if (omegas.size() < 3) {
        throw InsufficientCoverageError("parseval_check: grid needs at least three points", 1.0);
    }
    const CovarianceReport cov = lyapunov_covariance(sys);
    const Matrix8c noise = normal_ordered_noise(sys);

    std::vector<std::array<double, 4>> density(omegas.size());
    for (std::size_t i = 0; i < omegas.size(); ++i) {
        density[i] = mode_density(sys, noise, omegas[i]);
    }

    ParsevalReport report;
    report.points = omegas.size();
    // Composite Simpson with one extra midpoint per interval: the merged
    // pole grids are irregular, so this is the cheapest way past second order.
    for (std::size_t i = 1; i < omegas.size(); ++i) {
        const double h = omegas[i] - omegas[i - 1];
        const auto mid = mode_density(sys, noise, 0.5 * (omegas[i] + omegas[i - 1]));
        for (int k = 0; k < 4; ++k) {
            report.quadrature[k] += h / 6.0 * (density[i - 1][k] + 4.0 * mid[k] + density[i][k]);
        }
    }
    report.points += omegas.size() - 1;
    const double inv_2pi = 0.5 / std::numbers::pi;
    for (double& q : report.quadrature) {
        q *= inv_2pi;
    }
    report.lyapunov = cov.occupations();

    double scale = 0.0;
    for (int k = 0; k < 4; ++k) {
        scale = std::max(scale, std::abs(report.lyapunov[k]));
    }
    const double floor = 1e-12 * scale;
    for (int k = 0; k < 4; ++k) {
        const double ref = std::max(std::abs(report.lyapunov[k]), floor);
        if (ref == 0.0) {
            continue;
        }
        // Wings decay at least as 1/omega^2, so f(W) |W| bounds the missing
        // mass, and is the mass itself for Lorentzian wings. Add it back.
        const double tail = inv_2pi * (density.front()[k] * std::abs(omegas.front())
                                       + density.back()[k] * std::abs(omegas.back()));
        report.tail_fraction = std::max(report.tail_fraction, tail / ref);
        report.quadrature[k] += tail;
        report.max_mismatch = std::max(report.max_mismatch,
                                       std::abs(report.quadrature[k] - report.lyapunov[k]) / ref);
    }
    if (report.tail_fraction > 1e-4) {
        std::ostringstream msg;
        msg << "parseval_check: grid misses an estimated fraction " << report.tail_fraction
            << " of the spectral mass";
        throw InsufficientCoverageError(msg.str(), report.tail_fraction);
    }
    return report;
}

ParsevalReport parseval_check(const DriftSystem& sys) {
    const std::vector<double> grid = pole_adapted_grid(sys);
    return parseval_check(sys, grid);
}

SingleModeCheck limit_check_single_mode(const PhysicalConfig& cfg, const FrequencyGrid& grid) {
    if (cfg.two_resonators) {
        throw PreconditionError("limit_check_single_mode: needs the one-resonator configuration");
    }
    const DriftSystem sys = build_bare(cfg);
    const double half_window = 0.5 * std::min(cfg.omega_m, cfg.kappa());

    std::vector<double> omegas;
    for (double w : grid.omegas()) {
        if (std::abs(w - cfg.omega_m) <= half_window) {
            omegas.push_back(w);
        }
    }
    SingleModeCheck check;
    check.s2_zero = true;
    std::vector<double> t_r(omegas.size());
    for (std::size_t i = 0; i < omegas.size(); ++i) {
        const Susceptibility u = susceptibility(sys, omegas[i]);
        t_r[i] = transmission(u, cfg.kappa_ex).r;
        if (thermal_spectrum(u, cfg).s2 != 0.0) {
            check.s2_zero = false;
        }
        if (t_r[i] > check.peak_value) {
            check.peak_value = t_r[i];
            check.peak_omega = omegas[i];
        }
    }
    for (std::size_t i = 1; i + 1 < t_r.size(); ++i) {
        // Plateaus count once: strictly above the left neighbour, not below the right.
        if (t_r[i] > t_r[i - 1] && t_r[i] >= t_r[i + 1]) {
            std::size_t j = i + 1;
            while (j < t_r.size() && t_r[j] == t_r[i]) {
                ++j;
            }
            if (j == t_r.size() || t_r[j] < t_r[i]) {
                ++check.local_maxima;
            }
        }
    }
    return check;
}

double basis_consistency(const PhysicalConfig& cfg) {
    if (!cfg.two_resonators) {
        throw PreconditionError("basis_consistency: needs two mechanical resonators");
    }
    const DriftSystem bare = build_bare(cfg);
    const DriftSystem super = build_supermode(cfg);
    double worst = 0.0;
    for (const double w : {cfg.omega_m - cfg.j_m, cfg.omega_m + cfg.j_m}) {
        const double t_bare = transmission(susceptibility(bare, w), cfg.kappa_ex).r;
        const double t_super = transmission(susceptibility(super, w), cfg.kappa_ex).r;
        worst = std::max(worst, std::abs(t_bare - t_super) / std::abs(t_bare));
    }
    return worst;
}

}  // namespace omnr
