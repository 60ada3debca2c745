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


#include <doctest.h>

#include <cmath>

#include <Eigen/Eigenvalues>

#include "omnr/dynamics.hpp"
#include "omnr/errors.hpp"
#include "omnr/presets.hpp"
#include "omnr/spectra.hpp"
#include "omnr/verify.hpp"
#include "support.hpp"

using namespace omnr;
using omnr::test::Gen;
using omnr::test::rel_diff;

namespace {

PhysicalConfig decoupled(PresetName n) {
    PhysicalConfig cfg = make_preset(n).config;
    cfg.g_r = 0.0;
    cfg.g_l_explicit = cdouble(0.0);
    return cfg;
}

}  // namespace

TEST_CASE("property: diffusion matrix is Hermitian positive semidefinite") {
    Gen gen(0x5eed0301);
    for (int i = 0; i < 200; ++i) {
        const PhysicalConfig cfg = gen.config();
        std::vector<Basis> bases{Basis::Bare};
        if (cfg.two_resonators) bases.push_back(Basis::Supermode);
        for (Basis b : bases) {
            const Matrix8c d = diffusion_matrix(build(cfg, b)).d;
            const double scale = std::max(1.0, d.cwiseAbs().maxCoeff());
            CHECK((d - d.adjoint()).cwiseAbs().maxCoeff() <= 1e-12 * scale);
            const Eigen::SelfAdjointEigenSolver<Matrix8c> es(d);
            CHECK(es.eigenvalues().minCoeff() >= -1e-12 * scale);
        }
    }
}

TEST_CASE("common reservoir correlates the two mechanical rows") {
    const PhysicalConfig cfg = make_preset(PresetName::Fig2Two).config;
    const Matrix8c d = diffusion_matrix(build_bare(cfg)).d;
    CHECK(d(2, 3).real() == doctest::Approx(cfg.gamma_0 * (cfg.n_th + 1)));
    CHECK(d(6, 7).real() == doctest::Approx(cfg.gamma_0 * cfg.n_th));
    CHECK(d(2, 2).real() == doctest::Approx(cfg.gamma_m() * (cfg.n_th + 1)));
    CHECK(d(0, 0).real() == doctest::Approx(cfg.kappa()));
    CHECK(d(4, 4) == cdouble(0.0));
}

TEST_CASE("decoupled system thermalises each mode to its own bath") {
    PhysicalConfig cfg = decoupled(PresetName::Fig2Two);
    cfg.gamma_0 = 0.0;
    cfg.j_m = 0.0;
    const CovarianceReport r = lyapunov_covariance(build_bare(cfg));
    const auto occ = r.occupations();
    CHECK(std::abs(occ[0]) < 1e-12);
    CHECK(std::abs(occ[1]) < 1e-12);
    CHECK(std::abs(occ[2] - cfg.n_th) < 1e-10);
    CHECK(std::abs(occ[3] - cfg.n_th) < 1e-10);
    // <b b^+> = N + 1 in the anti-normally ordered block.
    CHECK(std::abs(r.c(2, 2).real() - (cfg.n_th + 1)) < 1e-10);
}

TEST_CASE("only the bright mode thermalises through the common reservoir") {
    PhysicalConfig cfg = decoupled(PresetName::Fig2Two);
    DriftSystem sys = build_supermode(cfg);
    // Private baths cold: any dark-mode population could only come from R_0.
    sys.channels[sys.channel_index(ChannelId::SupBrightPrivate)].occupation = 0.0;
    sys.channels[sys.channel_index(ChannelId::SupDarkPrivate)].occupation = 0.0;
    const auto occ = lyapunov_covariance(sys).occupations();
    const double gamma_plus = cfg.gamma_in + 2.0 * cfg.gamma_0;
    CHECK(std::abs(occ[idx::kDark]) < 1e-12);
    CHECK(occ[idx::kBright] == doctest::Approx(cfg.n_th * 2.0 * cfg.gamma_0 / gamma_plus).epsilon(1e-10));
    CHECK(occ[idx::kBright] == doctest::Approx(cfg.n_th).epsilon(1e-4));
}

TEST_CASE("Lyapunov residual on every stable preset") {
    for (PresetName name : all_presets()) {
        CAPTURE(to_string(name));
        const PhysicalConfig cfg = make_preset(name).config;
        std::vector<Basis> bases{Basis::Bare};
        if (cfg.two_resonators) bases.push_back(Basis::Supermode);
        for (Basis b : bases) {
            const CovarianceReport r = lyapunov_covariance(build(cfg, b));
            CHECK(r.residual < 1e-9 * r.d_scale);
            CHECK((r.c - r.c.adjoint()).cwiseAbs().maxCoeff() == 0.0);
        }
    }
}

TEST_CASE("Lyapunov needs a stable system") {
    PhysicalConfig cfg = make_preset(PresetName::Fig4Two).config;
    cfg.j_s = 1.0;
    CHECK_THROWS_AS(lyapunov_covariance(build_bare(cfg)), UnstableSystemError);
}

TEST_CASE("Parseval on a passive cavity with thermal light") {
    PhysicalConfig cfg = decoupled(PresetName::Fig2Two);
    cfg.j_s = 0.0;
    DriftSystem sys = build_bare(cfg);
    sys.channels[sys.channel_index(ChannelId::OptInR)].occupation = 1.0;
    const ParsevalReport r = parseval_check(sys);
    // Lorentzian: <a^+ a> = kappa_ex / kappa.
    CHECK(r.lyapunov[0] == doctest::Approx(cfg.kappa_ex / cfg.kappa()).epsilon(1e-12));
    CHECK(r.max_mismatch < 1e-6);
}

TEST_CASE("Parseval on the figure presets") {
    for (PresetName name : {PresetName::Fig2One, PresetName::Fig2Two, PresetName::Fig4One, PresetName::Fig4Two}) {
        CAPTURE(to_string(name));
        const DriftSystem sys = build_bare(make_preset(name).config);
        const ParsevalReport r = parseval_check(sys);
        CHECK(r.max_mismatch < 1e-3);
        CHECK(r.tail_fraction < 1e-4);
        CHECK(rel_diff(r.quadrature[0], r.lyapunov[0]) < 1e-3);
    }
}

TEST_CASE("Parseval reports a narrow grid as insufficient coverage") {
    const PhysicalConfig cfg = make_preset(PresetName::Fig2Two).config;
    const DriftSystem sys = build_bare(cfg);
    std::vector<double> narrow;
    for (int i = 0; i <= 2000; ++i) {
        narrow.push_back(cfg.omega_m - 0.05 + 0.1 * i / 2000.0);
    }
    CHECK_THROWS_AS(parseval_check(sys, narrow), InsufficientCoverageError);
}

TEST_CASE("single-mode limit") {
    const Preset resolved = make_preset(PresetName::Fig2One);
    const SingleModeCheck a = limit_check_single_mode(resolved.config, resolved.grid);
    CHECK(a.passed());
    CHECK(a.local_maxima == 1);
    CHECK(std::abs(a.peak_omega - resolved.config.omega_m) < 1e-2);

    const Preset unresolved = make_preset(PresetName::Fig4One);
    const SingleModeCheck b = limit_check_single_mode(unresolved.config, unresolved.grid);
    CHECK(b.passed());
    CHECK(b.peak_value > 1.0);

    const Preset two = make_preset(PresetName::Fig2Two);
    CHECK_THROWS_AS(limit_check_single_mode(two.config, two.grid), PreconditionError);
}

TEST_CASE("bare and supermode bases") {
    const PhysicalConfig cfg = make_preset(PresetName::Fig2Two).config;
    CHECK(basis_consistency(cfg) < 0.01);

    PhysicalConfig exact = cfg;
    exact.j_m = 0.0;
    exact.gamma_0 = 0.0;
    CHECK(basis_consistency(exact) < 1e-10);

    const double unresolved = basis_consistency(make_preset(PresetName::Fig4Two).config);
    MESSAGE("unresolved-sideband basis deviation (diagnostic): " << unresolved);
    CHECK(std::isfinite(unresolved));

    CHECK_THROWS_AS(basis_consistency(make_preset(PresetName::Fig2One).config), PreconditionError);
}
