#include "smmc/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace smmc {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

double parse_number(std::string_view value, std::string_view* suffix_out) {
    const std::string buf(value);
    char* end = nullptr;
    const double v = std::strtod(buf.c_str(), &end);
    if (end == buf.c_str()) throw ConfigError("not a number: '" + buf + "'");
    const std::string_view suffix = trim(value.substr(static_cast<std::size_t>(end - buf.c_str())));
    if (suffix_out != nullptr)
        *suffix_out = suffix;
    else if (!suffix.empty())
        throw ConfigError("trailing characters in number: '" + buf + "'");
    return v;
}

double parse_with_units(std::string_view value, const std::map<std::string, double, std::less<>>& units,
                        const char* what) {
    std::string_view suffix;
    const double v = parse_number(value, &suffix);
    if (suffix.empty()) return v;
    const auto it = units.find(suffix);
    if (it == units.end())
        throw ConfigError(std::string("unknown ") + what + " unit '" + std::string(suffix) + "'");
    return v * it->second;
}

long long parse_int(std::string_view value) {
    const double v = parse_number(value, nullptr);
    if (v != std::floor(v)) throw ConfigError("expected an integer, got '" + std::string(value) + "'");
    return static_cast<long long>(v);
}

std::vector<double> parse_snr_grid(std::string_view value) {
    std::vector<double> grid;
    const std::string s(value);
    if (s.find(':') != std::string::npos) {
        double start = 0, step = 0, stop = 0;
        std::istringstream in(s);
        char c1 = 0, c2 = 0;
        if (!(in >> start >> c1 >> step >> c2 >> stop) || c1 != ':' || c2 != ':')
            throw ConfigError("snr range must be start:step:stop, got '" + s + "'");
        if (!(step > 0.0) || stop < start) throw ConfigError("snr range must have step > 0 and stop >= start");
        for (double v = start; v <= stop + 1e-9; v += step) grid.push_back(v);
    } else {
        std::istringstream in(s);
        std::string tok;
        while (std::getline(in, tok, ',')) {
            const auto t = trim(tok);
            if (t.empty()) continue;
            grid.push_back(parse_number(t, nullptr));
        }
    }
    if (grid.empty()) throw ConfigError("snr grid is empty");
    return grid;
}

}  // namespace

double parse_length(std::string_view value) {
    static const std::map<std::string, double, std::less<>> units = {
        {"nm", 1e-9}, {"um", 1e-6}, {"mm", 1e-3}, {"cm", 1e-2}, {"m", 1.0}};
    return parse_with_units(value, units, "length");
}

double parse_time(std::string_view value) {
    static const std::map<std::string, double, std::less<>> units = {{"ms", 1e-3}, {"s", 1.0}};
    return parse_with_units(value, units, "time");
}

RunConfig parse_config_text(std::string_view text) {
    std::map<std::string, std::string, std::less<>> kv;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view sv = trim(line);
        if (const auto hash = sv.find('#'); hash != std::string_view::npos) sv = trim(sv.substr(0, hash));
        if (sv.empty()) continue;
        const auto eq = sv.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key(trim(sv.substr(0, eq)));
        const std::string value(trim(sv.substr(eq + 1)));
        if (key.empty() || value.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
        if (kv.count(key) != 0) throw ConfigError("duplicate key '" + key + "'");
        kv[key] = value;
    }

    auto take = [&kv](std::string_view key) -> std::optional<std::string> {
        const auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        std::string v = it->second;
        kv.erase(it);
        return v;
    };

    RunConfig cfg;

    // scheme and constellation sizes
    const std::string scheme = take("scheme").value_or("ssk");
    std::optional<std::string> n_str = take("n");
    std::optional<std::string> m_str = take("m");
    try {
        if (scheme == "ssk") {
            const int n = n_str ? static_cast<int>(parse_int(*n_str)) : 2;
            if (m_str && parse_int(*m_str) != 1) throw ConfigError("key 'm': SSK fixes m = 1");
            cfg.scheme = Scheme::ssk(n);
        } else if (scheme == "sm") {
            const int n = n_str ? static_cast<int>(parse_int(*n_str)) : 2;
            const int m = m_str ? static_cast<int>(parse_int(*m_str)) : 2;
            cfg.scheme = Scheme::sm(n, m);
        } else if (scheme == "mimo_ook") {
            const int n = n_str ? static_cast<int>(parse_int(*n_str)) : 2;
            if (m_str && parse_int(*m_str) != 2) throw ConfigError("key 'm': MIMO-OOK fixes m = 2");
            cfg.scheme = Scheme::mimo_ook(n);
        } else if (scheme == "siso_csk") {
            const int m = m_str ? static_cast<int>(parse_int(*m_str)) : 4;
            if (n_str && parse_int(*n_str) != 1) throw ConfigError("key 'n': SISO fixes n = 1");
            cfg.scheme = Scheme::siso_csk(m);
        } else {
            throw ConfigError("key 'scheme': unknown scheme '" + scheme + "'");
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError("key 'scheme'/'n'/'m': " + std::string(e.what()));
    }

    auto physical = [&](const char* key, double fallback, auto parser) {
        const auto v = take(key);
        if (!v) return fallback;
        double parsed = 0.0;
        try {
            parsed = parser(*v);
        } catch (const ConfigError& e) {
            throw ConfigError("key '" + std::string(key) + "': " + e.what());
        }
        if (!(parsed > 0.0)) throw ConfigError("key '" + std::string(key) + "': must be > 0");
        return parsed;
    };

    cfg.geometry.n_links = cfg.scheme.n_links;
    cfg.geometry.link_distance = physical("d", 20e-6, parse_length);
    cfg.geometry.separation = physical("r", 15e-6, parse_length);
    cfg.geometry.receiver_radius = physical("rho", 0.1e-6, parse_length);
    cfg.geometry.diffusion_coeff = physical("diffusion", 2.2e-9, [](std::string_view v) {
        return parse_number(v, nullptr);
    });
    cfg.symbol_duration = physical("ts", 0.2, parse_time);

    if (const auto v = take("snr")) {
        try {
            cfg.snr_grid_db = parse_snr_grid(*v);
        } catch (const ConfigError& e) {
            throw ConfigError("key 'snr': " + std::string(e.what()));
        }
    }
    if (const auto v = take("symbols")) cfg.symbols_per_rep = parse_int(*v);
    if (const auto v = take("reps")) cfg.replications = static_cast<int>(parse_int(*v));
    if (const auto v = take("seed")) cfg.master_seed = static_cast<std::uint64_t>(parse_int(*v));
    if (const auto v = take("threads")) cfg.threads = static_cast<int>(parse_int(*v));
    if (const auto v = take("ideal")) cfg.ideal_channel = parse_int(*v) != 0;

    if (const auto v = take("detector")) {
        if (*v == "ml") cfg.detector = DetectorChoice::JointMl;
        else if (*v == "sc") cfg.detector = DetectorChoice::SuccessiveSc;
        else if (*v == "egc") cfg.detector = DetectorChoice::SuccessiveEgc;
        else throw ConfigError("key 'detector': must be ml, sc or egc, got '" + *v + "'");
    }
    if (const auto v = take("ook_threshold")) {
        if (*v == "midpoint") cfg.ook_policy = OokThresholdPolicy::Midpoint;
        else throw ConfigError("key 'ook_threshold': unknown policy '" + *v + "'");
    }

    if (!kv.empty()) throw ConfigError("unknown key '" + kv.begin()->first + "'");

    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

}  // namespace smmc
