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


#include "omnr/serialize.hpp"

#include <cmath>

#include "omnr/config_io.hpp"

namespace omnr {

namespace {

using nlohmann::json;

json finite_or_null(double v) {
    return std::isfinite(v) ? json(v) : json(nullptr);
}

json complex_pair(cdouble z) {
    return json::array({finite_or_null(z.real()), finite_or_null(z.imag())});
}

template <typename Matrix>
json matrix_rows(const Matrix& a) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            row.push_back(complex_pair(a(i, j)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

// Values in csv_columns order.
std::vector<double> row_values(const SpectraPoint& p, Basis basis) {
    const double a = basis == Basis::Bare ? p.s1.value_or(NAN) : p.s_plus.value_or(NAN);
    const double b = basis == Basis::Bare ? p.s2.value_or(NAN) : p.s_minus.value_or(NAN);
    return {p.omega, p.omega_norm, p.t_r, p.t_l, p.r_r, p.r_l, p.s_r_th, a, b,
            p.s_r_vac, p.s_r_out, p.isolation_db};
}

}  // namespace

std::vector<std::string> csv_columns(Basis basis) {
    const bool bare = basis == Basis::Bare;
    return {"omega", "omega_norm", "T_R", "T_L", "R_R", "R_L", "S_R_th",
            bare ? "S1" : "S_plus", bare ? "S2" : "S_minus", "S_R_vac", "S_R_out", "isolation_db"};
}

std::string to_csv(const SpectraBundle& bundle) {
    std::string out;
    const auto cols = csv_columns(bundle.basis);
    for (std::size_t i = 0; i < cols.size(); ++i) {
        out += i ? "," : "";
        out += cols[i];
    }
    out += '\n';
    for (const SpectraPoint& p : bundle.points) {
        const auto values = row_values(p, bundle.basis);
        for (std::size_t i = 0; i < values.size(); ++i) {
            out += i ? "," : "";
            out += format_double(values[i]);
        }
        out += '\n';
    }
    return out;
}

json to_json(const SpectraBundle& bundle) {
    const auto cols = csv_columns(bundle.basis);
    json columns = json::object();
    for (const auto& c : cols) {
        columns[c] = json::array();
    }
    json flagged = json::array();
    for (const SpectraPoint& p : bundle.points) {
        const auto values = row_values(p, bundle.basis);
        for (std::size_t i = 0; i < cols.size(); ++i) {
            columns[cols[i]].push_back(finite_or_null(values[i]));
        }
        flagged.push_back(p.isolation_flagged);
    }
    return {
        {"basis", std::string(to_string(bundle.basis))},
        {"units", std::string(to_string(bundle.units))},
        {"n_th", bundle.n_th},
        {"out_scale", bundle.out_scale},
        {"s_r_in", bundle.s_r_in},
        {"s_l_in", bundle.s_l_in},
        {"unstable", bundle.unstable},
        {"column_order", cols},
        {"columns", std::move(columns)},
        {"isolation_flagged", std::move(flagged)},
    };
}

json to_json(const PhysicalConfig& cfg) {
    return {
        {"omega_m", cfg.omega_m},
        {"kappa_0", cfg.kappa_0},
        {"kappa_ex", cfg.kappa_ex},
        {"delta_0", cfg.delta_0},
        {"j_s", cfg.j_s},
        {"j_m", cfg.j_m},
        {"gamma_0", cfg.gamma_0},
        {"gamma_in", cfg.gamma_in},
        {"g_r", complex_pair(cfg.g_r)},
        {"g_l_mode", cfg.g_l_explicit ? complex_pair(*cfg.g_l_explicit) : json("derived")},
        {"g_l", complex_pair(cfg.g_l())},
        {"n_th", cfg.n_th},
        {"two_resonators", cfg.two_resonators},
        {"config_text", format_config(cfg)},
    };
}

json to_json(const StabilityReport& report) {
    json eig = json::array();
    for (const cdouble& l : report.eigenvalues) {
        eig.push_back(complex_pair(l));
    }
    return {{"stable", report.stable},
            {"min_real_part", report.min_real_part},
            {"tolerance", report.tolerance},
            {"eigenvalues", std::move(eig)}};
}

json to_json(const CovarianceReport& report) {
    return {{"residual", report.residual},
            {"d_scale", report.d_scale},
            {"occupations", report.occupations()}};
}

json to_json(const ParsevalReport& report) {
    return {{"quadrature", report.quadrature},
            {"lyapunov", report.lyapunov},
            {"max_mismatch", report.max_mismatch},
            {"tail_fraction", report.tail_fraction},
            {"points", report.points}};
}

json to_json(const SingleModeCheck& check) {
    return {{"local_maxima", check.local_maxima},
            {"peak_value", check.peak_value},
            {"peak_omega", check.peak_omega},
            {"s2_zero", check.s2_zero},
            {"passed", check.passed()}};
}

json matrices_json(const DriftSystem& sys) {
    json channels = json::array();
    for (const NoiseChannel& c : sys.channels) {
        channels.push_back({{"id", std::string(to_string(c.id))},
                            {"rate", c.rate},
                            {"occupation", c.occupation},
                            {"signal_port", c.is_signal_port}});
    }
    return {{"basis", std::string(to_string(sys.basis))},
            {"m", matrix_rows(sys.m)},
            {"input_map", matrix_rows(sys.input_map)},
            {"channels", std::move(channels)},
            {"stability", to_json(check_stability(sys))}};
}

std::string dump(const json& j) {
    return j.dump(2) + "\n";
}

}  // namespace omnr
