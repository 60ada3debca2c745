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


#include "omnr/cli.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "omnr/config_io.hpp"
#include "omnr/dynamics.hpp"
#include "omnr/errors.hpp"
#include "omnr/presets.hpp"
#include "omnr/serialize.hpp"
#include "omnr/spectra.hpp"
#include "omnr/verify.hpp"

namespace omnr {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::optional<double> symbol_value(std::string_view name, const PhysicalConfig& cfg) {
    if (name == "omega_m") return cfg.omega_m;
    if (name == "J_m" || name == "j_m") return cfg.j_m;
    if (name == "J_s" || name == "j_s") return cfg.j_s;
    if (name == "kappa_0") return cfg.kappa_0;
    if (name == "kappa") return cfg.kappa();
    if (name == "gamma_m") return cfg.gamma_m();
    return std::nullopt;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

struct Outputs {
    std::string format = "csv";
    std::optional<fs::path> path;
};

fs::path with_suffix(const fs::path& p, std::string_view suffix) {
    return fs::path(p.string() + std::string(suffix));
}

// out.csv -> out.bare.csv
fs::path with_basis(const fs::path& p, Basis b) {
    fs::path stem = p;
    stem.replace_extension();
    return fs::path(stem.string() + "." + std::string(to_string(b)) + p.extension().string());
}

void write_file(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    f << text;
    f.close();
    if (!f) {
        throw IoError("write to '" + path.string() + "' failed");
    }
}

json error_json(const std::string& kind, const std::string& message) {
    return {{"error", {{"kind", kind}, {"message", message}}}};
}

json verify_block(const PhysicalConfig& cfg, const FrequencyGrid& grid,
                  const std::vector<std::pair<DriftSystem, SpectraBundle>>& runs) {
    json report = json::object();
    json bases = json::object();
    for (const auto& [sys, bundle] : runs) {
        double worst = 0.0;
        for (const SpectraPoint& p : bundle.points) {
            worst = std::max(worst, p.residual);
        }
        bases[std::string(to_string(sys.basis))] = {
            {"stability", to_json(check_stability(sys))},
            {"max_inversion_residual", worst},
        };
    }
    report["bases"] = std::move(bases);

    const DriftSystem bare = build_bare(cfg);
    if (check_stability(bare).stable) {
        const CovarianceReport cov = lyapunov_covariance(bare);
        report["lyapunov"] = to_json(cov);
        try {
            report["parseval"] = to_json(parseval_check(bare));
        } catch (const InsufficientCoverageError& e) {
            report["parseval"] = {{"error", e.kind()},
                                  {"message", e.what()},
                                  {"tail_fraction", e.tail_fraction()}};
        }
    } else {
        report["lyapunov"] = {{"skipped", "unstable"}};
        report["parseval"] = {{"skipped", "unstable"}};
    }

    if (cfg.two_resonators) {
        const bool resolved = cfg.omega_m > cfg.kappa();
        report["basis_consistency"] = {
            {"deviation", basis_consistency(cfg)},
            {"tolerance", resolved ? json(0.01) : json(nullptr)},
        };
    } else {
        report["single_mode"] = to_json(limit_check_single_mode(cfg, grid));
    }
    return report;
}

int exit_code_for(const Error& e) {
    if (dynamic_cast<const UnstableSystemError*>(&e)) return kExitUnstable;
    if (dynamic_cast<const NumericalError*>(&e)) return kExitNumerical;
    if (dynamic_cast<const IoError*>(&e)) return kExitIo;
    return kExitConfig;
}

json describe(const Error& e) {
    json j = error_json(e.kind(), e.what());
    if (const auto* u = dynamic_cast<const UnstableSystemError*>(&e)) {
        j["error"]["min_real_part"] = u->min_real_part();
    } else if (const auto* r = dynamic_cast<const ResonantSingularityError*>(&e)) {
        j["error"]["omega"] = r->omega();
        j["error"]["condition"] = r->condition();
    } else if (const auto* c = dynamic_cast<const InsufficientCoverageError*>(&e)) {
        j["error"]["tail_fraction"] = c->tail_fraction();
    }
    return j;
}

}  // namespace

double parse_point(std::string_view expr, const PhysicalConfig& cfg) {
    std::string_view s = trim(expr);
    if (s.starts_with("omega=")) {
        s = trim(s.substr(6));
    }
    if (s.empty()) {
        throw ConfigError("empty --point expression");
    }
    const std::string original(expr);
    double total = 0.0;
    std::size_t i = 0;
    bool first = true;
    while (i < s.size()) {
        double sign = 1.0;
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            sign = s[i] == '-' ? -1.0 : 1.0;
            ++i;
        } else if (!first) {
            throw ConfigError("bad --point expression '" + original + "'");
        }
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;

        double coeff = 1.0;
        bool have_number = false;
        if (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.')) {
            const auto [ptr, ec] = std::from_chars(s.data() + i, s.data() + s.size(), coeff);
            if (ec != std::errc()) {
                throw ConfigError("bad number in --point expression '" + original + "'");
            }
            i = static_cast<std::size_t>(ptr - s.data());
            have_number = true;
            while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
            if (i < s.size() && s[i] == '*') {
                ++i;
                while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
                if (i >= s.size() || !std::isalpha(static_cast<unsigned char>(s[i]))) {
                    throw ConfigError("expected a symbol after '*' in '" + original + "'");
                }
            }
        }
        double value = 1.0;
        if (i < s.size() && std::isalpha(static_cast<unsigned char>(s[i]))) {
            const std::size_t start = i;
            while (i < s.size() && is_ident_char(s[i])) ++i;
            const std::string_view name = s.substr(start, i - start);
            const auto v = symbol_value(name, cfg);
            if (!v) {
                throw ConfigError("unknown symbol '" + std::string(name) + "' in --point expression");
            }
            value = *v;
        } else if (!have_number) {
            throw ConfigError("bad --point expression '" + original + "'");
        }
        total += sign * coeff * value;
        first = false;
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    return total;
}

FrequencyGrid parse_grid(std::string_view spec, const PhysicalConfig& cfg, AxisUnits fallback) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : spec) {
        if (c == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    if (parts.size() < 3 || parts.size() > 4) {
        throw ConfigError("--grid expects lo:hi:points[:units], got '" + std::string(spec) + "'");
    }
    auto number = [&](const std::string& t) {
        double v = 0.0;
        const std::string_view tv = trim(t);
        const auto [ptr, ec] = std::from_chars(tv.data(), tv.data() + tv.size(), v);
        if (ec != std::errc() || ptr != tv.data() + tv.size() || !std::isfinite(v)) {
            throw ConfigError("bad number '" + t + "' in --grid");
        }
        return v;
    };
    const double lo = number(parts[0]);
    const double hi = number(parts[1]);
    const double pts = number(parts[2]);
    if (pts < 0 || pts != std::floor(pts) || pts > 1e7) {
        throw ConfigError("--grid point count must be a non-negative integer");
    }
    if (hi < lo) {
        throw ConfigError("--grid needs lo <= hi");
    }
    AxisUnits units = fallback;
    if (parts.size() == 4) {
        const std::string_view u = trim(parts[3]);
        if (u == "kappa0" || u == "kappa_0") {
            units = AxisUnits::Kappa0;
        } else if (u == "gamma_m") {
            units = AxisUnits::GammaM;
        } else {
            throw ConfigError("--grid units must be kappa0 or gamma_m");
        }
    }
    return make_grid(cfg, units, {{lo, hi, static_cast<int>(pts), Spacing::Linear, 0.0}});
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Noise and transmission spectra of a WGM optomechanical isolator"};
    app.set_version_flag("--version", "omnr 1.0");

    std::string preset_name;
    std::string config_path;
    std::string format = "csv";
    std::string output;
    std::string basis_name = "bare";
    std::string signal_name = "none";
    std::vector<std::string> points;
    std::string grid_spec;
    bool verify = false;
    bool allow_unstable = false;
    bool dump_matrices = false;
    unsigned threads = 0;

    auto* preset_opt = app.add_option("--preset", preset_name, "figure preset name");
    auto* config_opt = app.add_option("--config", config_path, "key = value config file");
    preset_opt->excludes(config_opt);
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--output", output, "output file (stdout if omitted)");
    app.add_option("--basis", basis_name, "bare, supermode or both")
        ->check(CLI::IsMember({"bare", "supermode", "both"}));
    app.add_option("--point", points, "evaluate at these frequencies only, e.g. omega_m-J_m");
    app.add_option("--grid", grid_spec, "lo:hi:points[:kappa0|gamma_m] around omega_m");
    app.add_flag("--verify", verify, "attach oracle checks");
    app.add_flag("--allow-unstable", allow_unstable, "sweep unstable systems, flagged");
    app.add_flag("--dump-matrices", dump_matrices, "emit M and the input map");
    app.add_option("--signal", signal_name, "inject S_in = 1 at port R or L")
        ->check(CLI::IsMember({"none", "R", "L"}));
    app.add_option("--threads", threads, "worker threads (0 = all cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << error_json("usage", e.what()).dump() << '\n';
        return kExitConfig;
    }

    try {
        if (preset_opt->count() == 0 && config_opt->count() == 0) {
            throw ConfigError("exactly one of --preset or --config is required");
        }
        if (!points.empty() && !grid_spec.empty()) {
            throw ConfigError("--point and --grid are mutually exclusive");
        }

        PhysicalConfig cfg;
        FrequencyGrid grid;
        std::string run_name;
        json preset_info = nullptr;
        if (preset_opt->count()) {
            const Preset p = make_preset(preset_name);
            cfg = p.config;
            grid = p.grid;
            run_name = preset_name;
            preset_info = {{"name", preset_name}, {"plotted", p.outputs}};
        } else {
            cfg = load_config(config_path);
            grid = default_grid(cfg);
            run_name = fs::path(config_path).stem().string();
        }
        cfg.validate();

        if (!grid_spec.empty()) {
            grid = parse_grid(grid_spec, cfg, grid.units);
        } else if (!points.empty()) {
            grid.spans.clear();
            for (const auto& p : points) {
                grid.explicit_omegas.push_back(parse_point(p, cfg));
            }
        }

        std::vector<Basis> bases;
        if (basis_name != "supermode") bases.push_back(Basis::Bare);
        if (basis_name != "bare") bases.push_back(Basis::Supermode);

        SweepOptions opts;
        opts.allow_unstable = allow_unstable;
        opts.threads = threads;
        opts.signal = signal_name == "R" ? SignalPort::R : signal_name == "L" ? SignalPort::L : SignalPort::None;

        std::vector<std::pair<DriftSystem, SpectraBundle>> runs;
        for (Basis b : bases) {
            DriftSystem sys = build(cfg, b);
            SpectraBundle bundle = sweep(sys, cfg, grid, opts);
            runs.emplace_back(std::move(sys), std::move(bundle));
        }

        json extras = json::object();
        if (verify) {
            extras["verify"] = verify_block(cfg, grid, runs);
        }
        if (dump_matrices) {
            json m = json::object();
            for (const auto& [sys, bundle] : runs) {
                m[std::string(to_string(sys.basis))] = matrices_json(sys);
            }
            extras["matrices"] = std::move(m);
        }

        // Output path: --output, resolved under the env directory when relative.
        std::optional<fs::path> path;
        const char* env_dir = std::getenv(kOutputDirEnv);
        if (!output.empty()) {
            path = fs::path(output);
            if (env_dir && *env_dir && path->is_relative()) {
                path = fs::path(env_dir) / *path;
            }
        } else if (env_dir && *env_dir) {
            path = fs::path(env_dir) / (run_name + "." + format);
        }

        if (format == "json") {
            json doc = {{"preset", preset_info}, {"config", to_json(cfg)}, {"bundles", json::array()}};
            for (const auto& [sys, bundle] : runs) {
                doc["bundles"].push_back(to_json(bundle));
            }
            for (auto& [k, v] : extras.items()) {
                doc[k] = v;
            }
            if (path) {
                write_file(*path, dump(doc));
                write_file(with_suffix(*path, ".config.json"), dump(to_json(cfg)));
            } else {
                out << dump(doc);
            }
            return kExitOk;
        }

        if (path) {
            for (const auto& [sys, bundle] : runs) {
                const fs::path target = runs.size() > 1 ? with_basis(*path, sys.basis) : *path;
                write_file(target, to_csv(bundle));
            }
            write_file(with_suffix(*path, ".config.json"), dump(to_json(cfg)));
            for (auto& [k, v] : extras.items()) {
                write_file(with_suffix(*path, "." + k + ".json"), dump(v));
            }
        } else {
            bool first = true;
            for (const auto& [sys, bundle] : runs) {
                out << (first ? "" : "\n") << to_csv(bundle);
                first = false;
            }
            for (auto& [k, v] : extras.items()) {
                out << '\n' << dump(json{{k, v}});
            }
        }
        return kExitOk;
    } catch (const Error& e) {
        err << describe(e).dump() << '\n';
        return exit_code_for(e);
    } catch (const std::exception& e) {
        err << error_json("internal", e.what()).dump() << '\n';
        return kExitNumerical;
    }
}

}  // namespace omnr
