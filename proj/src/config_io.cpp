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

#include "omnr/config_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <algorithm>
#include <sstream>

#include "omnr/errors.hpp"

namespace omnr {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_real(std::string_view text, std::string_view key) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    double value = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc() || ptr != end) {
        throw ConfigError("invalid number '" + std::string(text) + "' for key '" + std::string(key) + "'");
    }
    return value;
}

bool parse_bool(std::string_view text, std::string_view key) {
    text = trim(text);
    if (text == "true" || text == "1") {
        return true;
    }
    if (text == "false" || text == "0") {
        return false;
    }
    throw ConfigError("invalid boolean '" + std::string(text) + "' for key '" + std::string(key) + "'");
}

constexpr std::array<std::string_view, 12> kKeys = {
    "omega_m", "kappa_0", "kappa_ex", "delta_0", "j_s", "j_m",
    "gamma_0", "gamma_in", "g_r", "g_l_mode", "n_th", "two_resonators"};

constexpr std::array<std::string_view, 9> kRequired = {
    "omega_m", "kappa_ex", "j_s", "j_m", "gamma_0", "gamma_in", "g_r", "n_th", "two_resonators"};

}  // namespace

std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    std::array<char, 64> buf{};
    const auto [ptr, ec] =
        std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
    (void)ec;
    return std::string(buf.data(), ptr);
}

cdouble parse_complex(std::string_view text) {
    text = trim(text);
    if (text.empty()) {
        throw ConfigError("empty complex value");
    }
    if (text.back() != 'j') {
        return {parse_real(text, "complex"), 0.0};
    }
    const std::string_view body = text.substr(0, text.size() - 1);
    // Split at the last sign that is not a leading sign or an exponent sign.
    std::size_t split = std::string_view::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
        if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    if (split == std::string_view::npos) {
        const std::string_view imag = trim(body);
        if (imag.empty() || imag == "+" || imag == "-") {
            return {0.0, imag == "-" ? -1.0 : 1.0};
        }
        return {0.0, parse_real(imag, "complex")};
    }
    const double re = parse_real(body.substr(0, split), "complex");
    std::string_view imag = trim(body.substr(split));
    double im = 0.0;
    if (imag == "+" || imag == "-") {
        im = imag == "-" ? -1.0 : 1.0;
    } else {
        im = parse_real(imag, "complex");
    }
    return {re, im};
}

std::string format_complex(cdouble z) {
    std::string out = format_double(z.real());
    const std::string im = format_double(z.imag());
    if (im.front() != '-') {
        out += '+';
    }
    out += im;
    out += 'j';
    return out;
}

PhysicalConfig parse_config(std::string_view text) {
    std::map<std::string, std::string, std::less<>> entries;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
            throw ConfigError("unknown config key '" + key + "'");
        }
        if (!entries.emplace(key, value).second) {
            throw ConfigError("duplicate config key '" + key + "'");
        }
    }
    for (const auto key : kRequired) {
        if (entries.find(key) == entries.end()) {
            throw ConfigError("missing config key '" + std::string(key) + "'");
        }
    }

    auto real = [&](std::string_view key) { return parse_real(entries.find(key)->second, key); };

    PhysicalConfig cfg;
    cfg.omega_m = real("omega_m");
    cfg.kappa_0 = entries.count("kappa_0") ? real("kappa_0") : 1.0;
    cfg.kappa_ex = real("kappa_ex");
    cfg.delta_0 = entries.count("delta_0") ? real("delta_0") : cfg.omega_m;
    cfg.j_s = real("j_s");
    cfg.j_m = real("j_m");
    cfg.gamma_0 = real("gamma_0");
    cfg.gamma_in = real("gamma_in");
    cfg.n_th = real("n_th");
    cfg.two_resonators = parse_bool(entries.find("two_resonators")->second, "two_resonators");
    try {
        cfg.g_r = parse_complex(entries.find("g_r")->second);
    } catch (const ConfigError& e) {
        throw ConfigError(std::string("g_r: ") + e.what());
    }
    if (const auto it = entries.find("g_l_mode"); it != entries.end() && it->second != "derived") {
        try {
            cfg.g_l_explicit = parse_complex(it->second);
        } catch (const ConfigError& e) {
            throw ConfigError(std::string("g_l_mode: expected 'derived' or a complex value: ") + e.what());
        }
    }
    cfg.validate();
    return cfg;
}

PhysicalConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path.string() + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string format_config(const PhysicalConfig& cfg) {
    std::ostringstream out;
    out << "omega_m = " << format_double(cfg.omega_m) << '\n'
        << "kappa_0 = " << format_double(cfg.kappa_0) << '\n'
        << "kappa_ex = " << format_double(cfg.kappa_ex) << '\n'
        << "delta_0 = " << format_double(cfg.delta_0) << '\n'
        << "j_s = " << format_double(cfg.j_s) << '\n'
        << "j_m = " << format_double(cfg.j_m) << '\n'
        << "gamma_0 = " << format_double(cfg.gamma_0) << '\n'
        << "gamma_in = " << format_double(cfg.gamma_in) << '\n'
        << "g_r = " << format_complex(cfg.g_r) << '\n'
        << "g_l_mode = " << (cfg.g_l_explicit ? format_complex(*cfg.g_l_explicit) : "derived") << '\n'
        << "n_th = " << format_double(cfg.n_th) << '\n'
        << "two_resonators = " << (cfg.two_resonators ? "true" : "false") << '\n';
    return out.str();
}

}  // namespace omnr
