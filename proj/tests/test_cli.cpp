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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "omnr/cli.hpp"
#include "omnr/config_io.hpp"
#include "omnr/errors.hpp"
#include "omnr/presets.hpp"
#include "omnr/serialize.hpp"
#include "omnr/spectra.hpp"

using namespace omnr;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
    int code = -1;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "omnr");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    Result r;
    r.code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

class TempDir {
public:
    TempDir() {
        std::random_device rd;
        path_ = fs::temp_directory_path() / ("omnr_test_" + std::to_string(rd()));
        fs::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    const fs::path& path() const { return path_; }

private:
    fs::path path_;
};

const char* kHeader = "omega,omega_norm,T_R,T_L,R_R,R_L,S_R_th,S1,S2,S_R_vac,S_R_out,isolation_db";

std::string config_text(double j_s) {
    PhysicalConfig cfg = make_preset(PresetName::Fig4Two).config;
    cfg.j_s = j_s;
    return format_config(cfg);
}

}  // namespace

TEST_CASE("point expressions") {
    const PhysicalConfig cfg = make_preset(PresetName::Fig2Two).config;
    CHECK(parse_point("omega_m", cfg) == 5.0);
    CHECK(parse_point("omega=omega_m-J_m", cfg) == 5.0 - 0.01);
    CHECK(parse_point("omega_m+J_m", cfg) == 5.0 + 0.01);
    CHECK(parse_point("omega_m + 2*J_m", cfg) == doctest::Approx(5.02));
    CHECK(parse_point("omega_m - 0.5 gamma_m", cfg) == doctest::Approx(5.0 - 0.5 * cfg.gamma_m()));
    CHECK(parse_point("4.5", cfg) == 4.5);
    CHECK(parse_point("1e-3+omega_m", cfg) == doctest::Approx(5.001));
    CHECK(parse_point("-kappa_0+omega_m", cfg) == 4.0);
    CHECK_THROWS_AS(parse_point("omega_x", cfg), ConfigError);
    CHECK_THROWS_AS(parse_point("", cfg), ConfigError);
    CHECK_THROWS_AS(parse_point("omega_m J_m", cfg), ConfigError);
    CHECK_THROWS_AS(parse_point("2*", cfg), ConfigError);
}

TEST_CASE("grid specs") {
    const PhysicalConfig cfg = make_preset(PresetName::Fig2Two).config;
    const FrequencyGrid g = parse_grid("-1:1:5", cfg, AxisUnits::Kappa0);
    const auto w = g.omegas();
    REQUIRE(w.size() == 5);
    CHECK(w.front() == 4.0);
    CHECK(w.back() == 6.0);
    const FrequencyGrid h = parse_grid("-20:20:3:gamma_m", cfg, AxisUnits::Kappa0);
    CHECK(h.units == AxisUnits::GammaM);
    CHECK(h.omegas()[0] == doctest::Approx(5.0 - 20 * cfg.gamma_m()));
    CHECK_THROWS_AS(parse_grid("1:0:5", cfg, AxisUnits::Kappa0), ConfigError);
    CHECK_THROWS_AS(parse_grid("0:1", cfg, AxisUnits::Kappa0), ConfigError);
    CHECK_THROWS_AS(parse_grid("0:1:2.5", cfg, AxisUnits::Kappa0), ConfigError);
    CHECK_THROWS_AS(parse_grid("0:1:5:hz", cfg, AxisUnits::Kappa0), ConfigError);
}

TEST_CASE("serialize: empty and single-point bundles") {
    SpectraBundle empty;
    CHECK(to_csv(empty) == std::string(kHeader) + "\n");

    const PhysicalConfig cfg = make_preset(PresetName::Fig2Two).config;
    FrequencyGrid g = make_grid(cfg, AxisUnits::Kappa0);
    g.explicit_omegas = {cfg.omega_m};
    const SpectraBundle one = sweep(build_bare(cfg), cfg, g);
    const auto rows = lines(to_csv(one));
    REQUIRE(rows.size() == 2);
    CHECK(rows[1].rfind("5,0,", 0) == 0);

    const SpectraBundle super = sweep(build_supermode(cfg), cfg, g);
    CHECK(lines(to_csv(super))[0] ==
          "omega,omega_norm,T_R,T_L,R_R,R_L,S_R_th,S_plus,S_minus,S_R_vac,S_R_out,isolation_db");

    const json j = to_json(one);
    CHECK(j["columns"]["T_R"].size() == 1);
    CHECK(j["columns"]["T_R"][0].get<double>() == one.points[0].t_r);
    CHECK(j["out_scale"].get<double>() == cfg.n_th);
}

TEST_CASE("csv output with config sidecar") {
    TempDir dir;
    const fs::path out = dir.path() / "fig2.csv";
    const Result r = invoke({"--preset", "fig2_two", "--format", "csv", "--output", out.string()});
    REQUIRE(r.code == 0);
    const auto rows = lines(slurp(out));
    REQUIRE(rows.size() > 1000);
    CHECK(rows[0] == kHeader);
    const json sidecar = json::parse(slurp(dir.path() / "fig2.csv.config.json"));
    CHECK(sidecar["omega_m"].get<double>() == 5.0);
    CHECK(sidecar["g_l_mode"] == "derived");
    CHECK(parse_config(sidecar["config_text"].get<std::string>()) == make_preset(PresetName::Fig2Two).config);
}

TEST_CASE("single point on the amplifying preset") {
    const Result r = invoke({"--preset", "fig4_two", "--point", "omega=omega_m-J_m"});
    REQUIRE(r.code == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 2);
    std::vector<double> v;
    std::istringstream in(rows[1]);
    for (std::string cell; std::getline(in, cell, ',');) v.push_back(std::stod(cell));
    REQUIRE(v.size() == 12);
    CHECK(v[0] == doctest::Approx(0.0998));
    CHECK(v[2] > 1.0);
}

TEST_CASE("configuration errors exit 3 and name the problem") {
    TempDir dir;
    const fs::path bad = dir.path() / "bad.cfg";
    std::ofstream(bad) << config_text(0.1) << "mystery_knob = 4\n";
    const Result r = invoke({"--config", bad.string()});
    CHECK(r.code == 3);
    const json e = json::parse(r.err);
    CHECK(e["error"]["kind"] == "config");
    CHECK(e["error"]["message"].get<std::string>().find("mystery_knob") != std::string::npos);

    CHECK(invoke({}).code == 3);
    CHECK(invoke({"--preset", "fig2_two", "--config", bad.string()}).code == 3);
    CHECK(invoke({"--preset", "fig9"}).code == 3);
    CHECK(invoke({"--preset", "fig2_two", "--format", "xml"}).code == 3);
    CHECK(invoke({"--preset", "fig2_one", "--basis", "supermode"}).code == 3);
    CHECK(invoke({"--config", (dir.path() / "missing.cfg").string()}).code == 3);
}

TEST_CASE("instability exits 2 unless allowed") {
    TempDir dir;
    const fs::path cfg = dir.path() / "strong.cfg";
    std::ofstream(cfg) << config_text(1.0);
    const Result r = invoke({"--config", cfg.string(), "--grid", "-0.2:0.2:5"});
    CHECK(r.code == 2);
    const json e = json::parse(r.err);
    CHECK(e["error"]["kind"] == "unstable");
    CHECK(e["error"]["min_real_part"].get<double>() < 0.0);

    const Result ok = invoke({"--config", cfg.string(), "--grid", "-0.2:0.2:5", "--allow-unstable", "--format",
                              "json", "--verify"});
    REQUIRE(ok.code == 0);
    const json j = json::parse(ok.out);
    CHECK(j["bundles"][0]["unstable"] == true);
    CHECK(j["verify"]["lyapunov"]["skipped"] == "unstable");
}

TEST_CASE("numerical failure exits 4") {
    TempDir dir;
    const fs::path cfg = dir.path() / "frozen.cfg";
    PhysicalConfig c = make_preset(PresetName::Fig2Two).config;
    c.g_r = 0.0;
    c.gamma_0 = 0.0;
    c.gamma_in = 0.0;
    c.j_m = 0.0;
    std::ofstream(cfg) << format_config(c);
    const Result r = invoke({"--config", cfg.string(), "--point", "omega_m", "--allow-unstable"});
    CHECK(r.code == 4);
    CHECK(json::parse(r.err)["error"]["kind"] == "resonant_singularity");
}

TEST_CASE("full runs are byte-identical") {
    const Result a = invoke({"--preset", "fig2_two"});
    const Result b = invoke({"--preset", "fig2_two", "--threads", "3"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    const Result c = invoke({"--preset", "fig2_two", "--format", "json"});
    const Result d = invoke({"--preset", "fig2_two", "--format", "json"});
    CHECK(c.out == d.out);
}

TEST_CASE("json document, both bases, verify and matrices") {
    const Result r = invoke({"--preset", "fig2_two", "--format", "json", "--basis", "both", "--point", "omega_m-J_m",
                             "--verify", "--dump-matrices"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["preset"]["name"] == "fig2_two");
    REQUIRE(j["bundles"].size() == 2);
    CHECK(j["bundles"][1]["basis"] == "supermode");
    CHECK(j["bundles"][1]["columns"].contains("S_minus"));
    CHECK(j["verify"]["parseval"]["max_mismatch"].get<double>() < 1e-3);
    CHECK(j["verify"]["basis_consistency"]["deviation"].get<double>() < 0.01);
    CHECK(j["matrices"]["bare"]["m"].size() == 8);
    CHECK(j["matrices"]["supermode"]["input_map"][3][4][0].get<double>() == 0.0);
}

TEST_CASE("output directory from the environment") {
    TempDir dir;
    ::setenv(kOutputDirEnv, dir.path().c_str(), 1);
    const Result a = invoke({"--preset", "fig4_one", "--point", "omega_m", "--output", "sub/run.csv", "--basis",
                             "bare", "--verify"});
    const Result b = invoke({"--preset", "fig2_two", "--point", "omega_m", "--basis", "both"});
    ::unsetenv(kOutputDirEnv);
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    CHECK(fs::exists(dir.path() / "sub" / "run.csv"));
    CHECK(fs::exists(dir.path() / "sub" / "run.csv.config.json"));
    CHECK(fs::exists(dir.path() / "sub" / "run.csv.verify.json"));
    CHECK(fs::exists(dir.path() / "fig2_two.bare.csv"));
    CHECK(fs::exists(dir.path() / "fig2_two.supermode.csv"));
    CHECK(a.out.empty());
}

TEST_CASE("signal injection") {
    const Result r = invoke({"--preset", "fig2_two", "--point", "omega_m-J_m", "--signal", "R", "--format", "json"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["bundles"][0]["s_r_in"] == 1.0);
    const double out = j["bundles"][0]["columns"]["S_R_out"][0].get<double>();
    const double t = j["bundles"][0]["columns"]["T_R"][0].get<double>();
    CHECK(out * 1e5 > t);
}

TEST_CASE("golden files") {
    struct Case {
        const char* file;
        std::vector<std::string> args;
    };
    const std::vector<Case> cases{
        {"fig2_two.csv", {"--preset", "fig2_two", "--grid", "-0.03:0.03:61"}},
        {"fig4_two.csv", {"--preset", "fig4_two", "--grid", "-0.001:0.001:41"}},
        {"fig3_supermode.csv", {"--preset", "fig3", "--basis", "supermode", "--grid", "-40:40:41"}},
    };
    for (const Case& c : cases) {
        CAPTURE(c.file);
        const Result r = invoke(c.args);
        REQUIRE(r.code == 0);
        const fs::path golden = fs::path(OMNR_GOLDEN_DIR) / c.file;
        REQUIRE(fs::exists(golden));
        CHECK(r.out == slurp(golden));
    }
}

TEST_CASE("figure preset parameters") {
    const PhysicalConfig f2 = make_preset(PresetName::Fig2Two).config;
    CHECK(f2.omega_m == 5.0);
    CHECK(f2.delta_0 == 5.0);
    CHECK(f2.g_r == cdouble(0.1, 0.0));
    CHECK(f2.j_m == 0.01);
    CHECK(f2.j_s == 0.1);
    CHECK(f2.kappa_ex == 1.0);
    CHECK(f2.kappa_0 == 1.0);
    CHECK(f2.gamma_0 == 5.0 / 1e4);
    CHECK(f2.gamma_in == 5.0 / 1e8);
    CHECK(f2.two_resonators);
    CHECK_FALSE(f2.g_l_explicit.has_value());
    CHECK_FALSE(make_preset(PresetName::Fig2One).config.two_resonators);
    CHECK(make_preset(PresetName::Fig3).config == f2);

    const PhysicalConfig f4 = make_preset(PresetName::Fig4Two).config;
    CHECK(f4.omega_m == 0.1);
    CHECK(f4.g_r == cdouble(0.01, 0.0));
    CHECK(f4.j_m == 0.0002);
    CHECK(f4.j_s == 0.1);
    CHECK(f4.gamma_0 == 0.1 / 1e4);
    CHECK(f4.gamma_in == 0.1 / 1e8);

    const PhysicalConfig f5r = make_preset(PresetName::Fig5Resolved).config;
    CHECK(f5r.omega_m == 5.0);
    CHECK(f5r.j_s == 1.0);
    CHECK(f5r.g_r == cdouble(0.1, 0.0));
    CHECK(f5r.j_m == 0.01);

    const PhysicalConfig f5u = make_preset(PresetName::Fig5Unresolved).config;
    CHECK(f5u.omega_m == 0.1);
    CHECK(f5u.j_s == 0.45);
    CHECK(f5u.g_r == cdouble(0.01, 0.0));
    CHECK(f5u.j_m == 0.0002);

    CHECK(make_preset(PresetName::Fig3).grid.units == AxisUnits::GammaM);
    CHECK(make_preset(PresetName::Fig5Resolved).grid.units == AxisUnits::GammaM);
    CHECK(make_preset(PresetName::Fig2Two).grid.units == AxisUnits::Kappa0);
    for (PresetName n : all_presets()) {
        CHECK(parse_preset_name(to_string(n)) == n);
        CHECK(make_preset(n).config.n_th == 1e5);
    }
}
