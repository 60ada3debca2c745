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

#include "omnr/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>
#include <thread>

#include <Eigen/LU>

#include "omnr/errors.hpp"

namespace omnr {

namespace {

using ldouble = long double;
using cldouble = std::complex<long double>;
using Matrix8cl = Eigen::Matrix<cldouble, 8, 8>;

constexpr double kMaxCondition = 1e12;

ldouble norm_l(cdouble z) {
    const ldouble re = z.real();
    const ldouble im = z.imag();
    return re * re + im * im;
}

ldouble norm_l(cldouble z) {
    return z.real() * z.real() + z.imag() * z.imag();
}

}  // namespace

Susceptibility susceptibility(const DriftSystem& sys, double omega) {
    Matrix8c a = sys.m;
    a.diagonal().array() -= cdouble(0.0, omega);

    const Eigen::PartialPivLU<Matrix8c> lu(a);
    const double rcond = lu.rcond();
    const double condition = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
    if (!(condition <= kMaxCondition)) {
        std::ostringstream msg;
        msg << "resonant singularity: M - i omega I is ill-conditioned at omega = " << omega
            << " (condition estimate " << condition << ")";
        throw ResonantSingularityError(msg.str(), omega, condition);
    }

    Susceptibility s;
    s.omega = omega;
    s.basis = sys.basis;
    s.condition = condition;
    s.u = lu.solve(Matrix8c::Identity());

    // One refinement step with the residual formed in extended precision.
    const Matrix8cl r = Matrix8cl::Identity() - a.cast<cldouble>() * s.u.cast<cldouble>();
    s.u += lu.solve(r.cast<cdouble>());

    s.residual = (a * s.u - Matrix8c::Identity()).cwiseAbs().maxCoeff();
    if (!std::isfinite(s.residual)) {
        throw NumericalError("susceptibility: non-finite solution");
    }
    return s;
}

PortPair transmission(const Susceptibility& u, double kappa_ex) {
    const ldouble k = kappa_ex;
    const cldouble u11(u(1, 1).real(), u(1, 1).imag());
    const cldouble u22(u(2, 2).real(), u(2, 2).imag());
    const ldouble t_r = norm_l(k * u11 - cldouble(1)) + k * k * norm_l(u(1, 5));
    const ldouble t_l = norm_l(k * u22 - cldouble(1)) + k * k * norm_l(u(2, 6));
    return {static_cast<double>(t_r), static_cast<double>(t_l)};
}

PortPair reflection(const Susceptibility& u, double kappa_ex) {
    const double k2 = kappa_ex * kappa_ex;
    return {k2 * (std::norm(u(1, 2)) + std::norm(u(1, 6))),
            k2 * (std::norm(u(2, 1)) + std::norm(u(2, 5)))};
}

ThermalSpectrum thermal_spectrum(const Susceptibility& u, const PhysicalConfig& cfg) {
    if (u.basis != Basis::Bare) {
        throw PreconditionError("thermal_spectrum: needs a bare-basis susceptibility");
    }
    const double kex = cfg.kappa_ex;
    const double g0 = cfg.gamma_0;
    const double gin = cfg.gamma_in;
    const double gm = cfg.gamma_m();

    auto port = [&](int row) {
        const cdouble u3 = u(row, 3), u4 = u(row, 4), u7 = u(row, 7), u8 = u(row, 8);
        return kex * g0 * (std::norm(u3 + u4) + std::norm(u7 + u8))
               + kex * gin * (std::norm(u3) + std::norm(u4) + std::norm(u7) + std::norm(u8));
    };

    ThermalSpectrum th;
    th.s_r_th = port(1);
    th.s_l_th = port(2);
    th.s1 = kex * gm * (std::norm(u(1, 3)) + std::norm(u(1, 7)));
    th.s2 = kex * gm * (std::norm(u(1, 4)) + std::norm(u(1, 8)));
    return th;
}

SupermodeThermal supermode_thermal(const Susceptibility& u, const PhysicalConfig& cfg) {
    if (u.basis != Basis::Supermode) {
        throw PreconditionError("supermode_thermal: needs a supermode-basis susceptibility");
    }
    const double kex = cfg.kappa_ex;
    const double gamma_plus = cfg.gamma_in + 2.0 * cfg.gamma_0;
    const double gin = cfg.gamma_in;

    SupermodeThermal st;
    st.s_plus = kex * gamma_plus * (std::norm(u(1, 3)) + std::norm(u(1, 7)));
    st.s_minus = kex * gin * (std::norm(u(1, 4)) + std::norm(u(1, 8)));
    st.s_plus_l = kex * gamma_plus * (std::norm(u(2, 3)) + std::norm(u(2, 7)));
    st.s_minus_l = kex * gin * (std::norm(u(2, 4)) + std::norm(u(2, 8)));
    return st;
}

PortPair vacuum_spectrum(const Susceptibility& u, const PhysicalConfig& cfg) {
    const double kex = cfg.kappa_ex;
    const double optical = kex * kex + kex * cfg.kappa_0;

    auto port = [&](int row) {
        const double opt = optical * (std::norm(u(row, 5)) + std::norm(u(row, 6)));
        if (u.basis == Basis::Bare) {
            return opt + kex * cfg.gamma_0 * std::norm(u(row, 7) + u(row, 8))
                   + kex * cfg.gamma_in * (std::norm(u(row, 7)) + std::norm(u(row, 8)));
        }
        const double gamma_plus = cfg.gamma_in + 2.0 * cfg.gamma_0;
        return opt + kex * gamma_plus * std::norm(u(row, 7))
               + kex * cfg.gamma_in * std::norm(u(row, 8));
    };
    return {port(1), port(2)};
}

double isolation_db(double t_r, double t_l) {
    if (t_l == 0.0) {
        if (t_r == 0.0) {
            return std::numeric_limits<double>::quiet_NaN();
        }
        return std::numeric_limits<double>::infinity();
    }
    return static_cast<double>(10.0L * std::log10(static_cast<ldouble>(t_r) / static_cast<ldouble>(t_l)));
}

PortPair compose_output(const SpectraPoint& p, double n_th, double s_r_in, double s_l_in) {
    return {p.t_r * s_r_in + p.r_r * s_l_in + n_th * p.s_r_th + p.s_r_vac,
            p.t_l * s_l_in + p.r_l * s_r_in + n_th * p.s_l_th + p.s_l_vac};
}

SpectraPoint evaluate_point(const DriftSystem& sys, const PhysicalConfig& cfg, double omega,
                            double s_r_in, double s_l_in) {
    const Susceptibility u = susceptibility(sys, omega);

    SpectraPoint p;
    p.omega = omega;
    p.omega_norm = omega - cfg.omega_m;
    p.residual = u.residual;

    const PortPair t = transmission(u, cfg.kappa_ex);
    p.t_r = t.r;
    p.t_l = t.l;
    const PortPair r = reflection(u, cfg.kappa_ex);
    p.r_r = r.r;
    p.r_l = r.l;

    if (sys.basis == Basis::Bare) {
        const ThermalSpectrum th = thermal_spectrum(u, cfg);
        p.s_r_th = th.s_r_th;
        p.s_l_th = th.s_l_th;
        p.s1 = th.s1;
        p.s2 = th.s2;
    } else {
        const SupermodeThermal st = supermode_thermal(u, cfg);
        p.s_r_th = st.s_r_th();
        p.s_l_th = st.s_l_th();
        p.s_plus = st.s_plus;
        p.s_minus = st.s_minus;
    }

    const PortPair vac = vacuum_spectrum(u, cfg);
    p.s_r_vac = vac.r;
    p.s_l_vac = vac.l;

    const PortPair out = compose_output(p, cfg.n_th, s_r_in, s_l_in);
    p.s_r_out = out.r;
    p.s_l_out = out.l;

    p.isolation_db = isolation_db(p.t_r, p.t_l);
    p.isolation_flagged = !std::isfinite(p.isolation_db);
    return p;
}

SpectraBundle sweep(const DriftSystem& sys, const PhysicalConfig& cfg, const FrequencyGrid& grid,
                    const SweepOptions& opts) {
    SpectraBundle bundle;
    bundle.basis = sys.basis;
    bundle.units = grid.units;
    bundle.n_th = cfg.n_th;
    bundle.out_scale = cfg.n_th > 0.0 ? cfg.n_th : 1.0;
    bundle.s_r_in = opts.signal == SignalPort::R ? 1.0 : 0.0;
    bundle.s_l_in = opts.signal == SignalPort::L ? 1.0 : 0.0;

    const StabilityReport stability = check_stability(sys);
    if (!stability.stable) {
        if (!opts.allow_unstable) {
            std::ostringstream msg;
            msg << "drift matrix is unstable (min Re(lambda) = " << stability.min_real_part << ")";
            throw UnstableSystemError(msg.str(), stability.min_real_part);
        }
        bundle.unstable = true;
    }

    const std::vector<double> omegas = grid.omegas();
    const std::size_t n = omegas.size();
    bundle.points.resize(n);
    std::vector<std::exception_ptr> errors(n);

    auto work = [&](std::size_t begin, std::size_t stride) {
        for (std::size_t i = begin; i < n; i += stride) {
            try {
                SpectraPoint p = evaluate_point(sys, cfg, omegas[i], bundle.s_r_in, bundle.s_l_in);
                p.omega_norm = grid.normalize(omegas[i]);
                p.s_r_out /= bundle.out_scale;
                p.s_l_out /= bundle.out_scale;
                bundle.points[i] = p;
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };

    unsigned threads = opts.threads != 0 ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n / 64, 1)));
    if (threads <= 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(work, t, threads);
        }
        for (auto& th : pool) {
            th.join();
        }
    }
    // Report the lowest-frequency failure so errors do not depend on scheduling.
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return bundle;
}

}  // namespace omnr
