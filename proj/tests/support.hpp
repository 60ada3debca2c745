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

// Shared test helpers: independent reference computations and hand-rolled
// random generators for property tests.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <limits>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "omnr/dynamics.hpp"
#include "omnr/params.hpp"

namespace omnr::test {

using cld = std::complex<long double>;
using Column = std::array<cld, 8>;

/// Column j (0-based) of (M - i omega I)^{-1} by Gaussian elimination with
/// partial pivoting in long double. No Eigen involved.
inline Column oracle_column(const Matrix8c& m, double omega, int j) {
    cld a[8][9];
    for (int r = 0; r < 8; ++r) {
        for (int c = 0; c < 8; ++c) {
            a[r][c] = cld(m(r, c).real(), m(r, c).imag());
        }
        a[r][r] -= cld(0.0L, static_cast<long double>(omega));
        a[r][8] = r == j ? cld(1.0L) : cld(0.0L);
    }
    for (int k = 0; k < 8; ++k) {
        int piv = k;
        for (int r = k + 1; r < 8; ++r) {
            if (std::abs(a[r][k]) > std::abs(a[piv][k])) piv = r;
        }
        for (int c = 0; c < 9; ++c) std::swap(a[k][c], a[piv][c]);
        for (int r = k + 1; r < 8; ++r) {
            const cld f = a[r][k] / a[k][k];
            for (int c = k; c < 9; ++c) a[r][c] -= f * a[k][c];
        }
    }
    Column x{};
    for (int r = 7; r >= 0; --r) {
        cld s = a[r][8];
        for (int c = r + 1; c < 8; ++c) s -= a[r][c] * x[c];
        x[r] = s / a[r][r];
    }
    return x;
}

/// Full oracle inverse, returned in double precision.
inline Matrix8c oracle_inverse(const Matrix8c& m, double omega) {
    Matrix8c u;
    for (int j = 0; j < 8; ++j) {
        const Column c = oracle_column(m, omega, j);
        for (int r = 0; r < 8; ++r) {
            u(r, j) = cdouble(static_cast<double>(c[r].real()), static_cast<double>(c[r].imag()));
        }
    }
    return u;
}

/// Largest violation of conjugate pairing among `ev`, measured in units of
/// the first-order perturbation bound 64 eps ||M||_F s_i, where s_i is the
/// condition number of the eigenvalue. Values <= 1 mean the spectrum is
/// conjugation-symmetric to within rounding.
inline double conjugate_pair_violation(const Matrix8c& m, const std::vector<cdouble>& ev) {
    const Eigen::ComplexEigenSolver<Matrix8c> es(m, true);
    const Matrix8c v = es.eigenvectors();
    const Matrix8c w = v.inverse();
    const double unit = 64.0 * std::numeric_limits<double>::epsilon() * m.norm();
    double worst = 0.0;
    for (const cdouble& l : ev) {
        int k = 0;
        for (int i = 1; i < 8; ++i) {
            if (std::abs(es.eigenvalues()(i) - l) < std::abs(es.eigenvalues()(k) - l)) k = i;
        }
        const double s = w.row(k).norm() * v.col(k).norm();
        double gap = std::numeric_limits<double>::infinity();
        for (const cdouble& x : ev) gap = std::min(gap, std::abs(x - std::conj(l)));
        worst = std::max(worst, gap / (unit * s));
    }
    return worst;
}

inline double rel_diff(double a, double b) {
    const double s = std::max(std::abs(a), std::abs(b));
    return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

inline double db(double x) { return 10.0 * std::log10(x); }

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng_);
    }
    double log_uniform(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }
    bool coin() { return std::bernoulli_distribution(0.5)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    /// A valid (not necessarily stable) configuration spanning both
    /// sideband regimes.
    PhysicalConfig config() {
        PhysicalConfig c;
        c.omega_m = log_uniform(0.05, 8.0);
        c.kappa_0 = 1.0;
        c.kappa_ex = uniform(0.2, 3.0);
        c.delta_0 = c.omega_m;
        c.j_s = uniform(0.0, 1.5);
        c.j_m = uniform(0.0, 0.05) * c.omega_m;
        c.gamma_0 = log_uniform(1e-5, 1e-3) * c.omega_m;
        c.gamma_in = log_uniform(1e-9, 1e-5) * c.omega_m;
        c.g_r = std::polar(uniform(0.0, 0.15) * std::min(1.0, c.omega_m), uniform(-3.14, 3.14));
        c.n_th = coin() ? 0.0 : log_uniform(1.0, 1e5);
        c.two_resonators = coin();
        return c;
    }

    /// Like config() but retried until the drift matrix is stable.
    PhysicalConfig stable_config() {
        for (;;) {
            PhysicalConfig c = config();
            if (check_stability(build_bare(c)).stable) {
                return c;
            }
        }
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

}  // namespace omnr::test
