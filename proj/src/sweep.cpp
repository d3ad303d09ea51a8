#include "oemswap/sweep.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

namespace oemswap {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void reject_unknown_keys(const nlohmann::json& j,
                         std::initializer_list<const char*> allowed,
                         const std::string& where) {
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || key == a;
        if (!ok)
            throw ConfigError("unknown field '" + key + "' in " + where);
    }
}

double require_number(const nlohmann::json& j, const char* key,
                      const std::string& where) {
    if (!j.contains(key))
        throw ConfigError("missing field '" + std::string(key) + "' in " + where);
    if (!j.at(key).is_number())
        throw ConfigError("field '" + std::string(key) + "' in " + where +
                          " must be a number");
    return j.at(key).get<double>();
}

ModeParams parse_mode(const nlohmann::json& j, const std::string& where) {
    reject_unknown_keys(j, {"wavelength", "power", "kappa", "detuning", "g"},
                        where);
    ModeParams m;
    m.wavelength = require_number(j, "wavelength", where);
    m.power = require_number(j, "power", where);
    m.kappa = kTwoPi * require_number(j, "kappa", where);
    m.detuning = kTwoPi * require_number(j, "detuning", where);
    m.g = kTwoPi * require_number(j, "g", where);
    return m;
}

}  // namespace

std::vector<double> SweepSpec::grid() const {
    std::vector<double> g;
    if (points == 1) {
        g.push_back(start);
        return g;
    }
    for (int i = 0; i < points; ++i) {
        const double t = static_cast<double>(i) / (points - 1);
        if (scale == SweepScale::Log)
            g.push_back(start * std::pow(stop / start, t));
        else
            g.push_back(start + t * (stop - start));
    }
    return g;
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
    reject_unknown_keys(j, {"system", "filters", "sweep", "output"}, "config");
    RunConfig c;

    if (!j.contains("system")) throw ConfigError("missing 'system' section");
    const auto& sys = j.at("system");
    reject_unknown_keys(
        sys, {"omega_m", "q_m", "mass", "temperature", "modes"}, "system");
    c.system.omega_m = kTwoPi * require_number(sys, "omega_m", "system");
    c.system.q_m = require_number(sys, "q_m", "system");
    c.system.mass = require_number(sys, "mass", "system");
    c.system.temperature = require_number(sys, "temperature", "system");
    if (!sys.contains("modes")) throw ConfigError("missing 'system.modes'");
    reject_unknown_keys(sys.at("modes"), {"b", "c", "w"}, "system.modes");
    for (char role : {'b', 'c', 'w'}) {
        const std::string key(1, role);
        if (!sys.at("modes").contains(key))
            throw ConfigError("missing 'system.modes." + key + "'");
        c.system.mode(role) =
            parse_mode(sys.at("modes").at(key), "system.modes." + key);
    }

    if (!j.contains("filters")) throw ConfigError("missing 'filters' section");
    const auto& fil = j.at("filters");
    reject_unknown_keys(fil, {"tau", "omega_b", "omega_c", "omega_w"}, "filters");
    c.filter_tau = require_number(fil, "tau", "filters");
    c.filter_omega_b = require_number(fil, "omega_b", "filters");
    c.filter_omega_c = require_number(fil, "omega_c", "filters");
    c.filter_omega_w = require_number(fil, "omega_w", "filters");
    if (!(c.filter_tau > 0.0))
        throw ConfigError("'filters.tau' must be positive");

    if (!j.contains("sweep")) throw ConfigError("missing 'sweep' section");
    const auto& sw = j.at("sweep");
    reject_unknown_keys(sw, {"variable", "start", "stop", "points", "scale"},
                        "sweep");
    const std::string var = sw.value("variable", "");
    if (var == "tau")
        c.sweep.variable = SweepVariable::Tau;
    else if (var == "power_w")
        c.sweep.variable = SweepVariable::PowerW;
    else if (var == "temperature")
        c.sweep.variable = SweepVariable::Temperature;
    else
        throw ConfigError(
            "'sweep.variable' must be one of tau, power_w, temperature");
    c.sweep.start = require_number(sw, "start", "sweep");
    c.sweep.stop = sw.contains("stop") ? require_number(sw, "stop", "sweep")
                                       : c.sweep.start;
    if (!sw.contains("points") || !sw.at("points").is_number_integer())
        throw ConfigError("'sweep.points' must be an integer");
    c.sweep.points = sw.at("points").get<int>();
    if (c.sweep.points < 1) throw ConfigError("'sweep.points' must be >= 1");
    if (c.sweep.points > 1 && !(c.sweep.start < c.sweep.stop))
        throw ConfigError("'sweep.start' must be below 'sweep.stop'");
    const std::string scale = sw.value("scale", "linear");
    if (scale == "linear")
        c.sweep.scale = SweepScale::Linear;
    else if (scale == "log")
        c.sweep.scale = SweepScale::Log;
    else
        throw ConfigError("'sweep.scale' must be 'linear' or 'log'");
    if (c.sweep.scale == SweepScale::Log && !(c.sweep.start > 0.0))
        throw ConfigError("log sweep needs a positive 'sweep.start'");

    if (!j.contains("output")) throw ConfigError("missing 'output' section");
    const auto& out = j.at("output");
    reject_unknown_keys(out, {"path", "format"}, "output");
    if (!out.contains("path") || !out.at("path").is_string())
        throw ConfigError("'output.path' must be a string");
    c.output_path = out.at("path").get<std::string>();
    const std::string format = out.value("format", "csv");
    if (format == "csv")
        c.format = OutputFormat::Csv;
    else if (format == "json")
        c.format = OutputFormat::Json;
    else
        throw ConfigError("'output.format' must be 'csv' or 'json'");

    try {
        c.system.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return c;
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config parse error in " + path + ": " + e.what());
    }
    return from_json(j);
}

FilterBank RunConfig::filters() const {
    const double omega_m = system.omega_m;
    return FilterBank{{filter_tau / omega_m, filter_omega_b * omega_m},
                      {filter_tau / omega_m, filter_omega_c * omega_m},
                      {filter_tau / omega_m, filter_omega_w * omega_m}};
}

std::string SweepRecord::to_csv_row() const {
    std::ostringstream os;
    os << fmt(swept_value) << ',';
    if (stable) {
        os << fmt(en_ww) << ',' << fmt(en_cc) << ',' << fmt(mu_b) << ','
           << fmt(mu_wb) << ',' << fmt(mu_bc) << ',' << fmt(eta_ww_shortcut)
           << ',' << fmt(eta_ww_measured) << ',';
    } else {
        os << ",,,,,,,";
    }
    os << (stable ? "true" : "false") << ','
       << (certified ? "true" : "false");
    return os.str();
}

std::optional<SweepRecord> SweepRecord::from_csv_row(const std::string& row) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : row) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    fields.push_back(cur);
    if (fields.size() != 10) return std::nullopt;
    try {
        SweepRecord r;
        r.swept_value = std::stod(fields[0]);
        r.stable = fields[8] == "true";
        r.certified = fields[9] == "true";
        if (r.stable) {
            r.en_ww = std::stod(fields[1]);
            r.en_cc = std::stod(fields[2]);
            r.mu_b = std::stod(fields[3]);
            r.mu_wb = std::stod(fields[4]);
            r.mu_bc = std::stod(fields[5]);
            r.eta_ww_shortcut = std::stod(fields[6]);
            r.eta_ww_measured = std::stod(fields[7]);
        }
        return r;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

nlohmann::json SweepRecord::to_json() const {
    nlohmann::json j{{"swept_value", swept_value},
                     {"stable", stable},
                     {"certified", certified}};
    if (stable) {
        j["EN_ww"] = en_ww;
        j["EN_cc"] = en_cc;
        j["mu_b"] = mu_b;
        j["mu_wb"] = mu_wb;
        j["mu_bc"] = mu_bc;
        j["eta_ww_shortcut"] = eta_ww_shortcut;
        j["eta_ww_measured"] = eta_ww_measured;
    }
    return j;
}

SweepRecord evaluate_point(const RunConfig& config, double swept_value) {
    RunConfig point = config;
    switch (config.sweep.variable) {
        case SweepVariable::Tau: point.filter_tau = swept_value; break;
        case SweepVariable::PowerW: point.system.w.power = swept_value; break;
        case SweepVariable::Temperature:
            point.system.temperature = swept_value;
            break;
    }

    SweepRecord rec;
    rec.swept_value = swept_value;

    const LinearModel model = build_linear_model(point.system);
    if (!check_stability(model).stable) return rec;  // stable stays false

    const OutputCM out = output_cm(model, point.filters());
    const SwapResult swap = evaluate(site_from_output(out));
    rec.stable = true;
    rec.en_ww = swap.en_ww;
    rec.en_cc = swap.en_cc;
    rec.mu_b = swap.mu_b;
    rec.mu_wb = swap.mu_wb;
    rec.mu_bc = swap.mu_bc;
    rec.eta_ww_shortcut = swap.eta_ww_shortcut;
    rec.eta_ww_measured = swap.eta_ww;
    rec.certified = swap.certified;
    return rec;
}

SweepSummary run_sweep(const RunConfig& config) {
    SweepSummary s;
    for (double value : config.sweep.grid()) {
        SweepRecord rec = evaluate_point(config, value);
        s.stable_count += rec.stable ? 1 : 0;
        s.certified_count += rec.certified ? 1 : 0;
        s.records.push_back(std::move(rec));
    }
    return s;
}

void write_csv(const SweepSummary& s, std::ostream& out) {
    out << kCsvHeader << '\n';
    for (const auto& rec : s.records) out << rec.to_csv_row() << '\n';
}

void write_json(const SweepSummary& s, std::ostream& out) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& rec : s.records) j.push_back(rec.to_json());
    out << j.dump(2) << '\n';
}

std::vector<std::string> validate(const RunConfig& config) {
    std::vector<std::string> notes;
    const auto grid = config.sweep.grid();
    for (double endpoint : {grid.front(), grid.back()}) {
        RunConfig point = config;
        switch (config.sweep.variable) {
            case SweepVariable::Tau: point.filter_tau = endpoint; break;
            case SweepVariable::PowerW: point.system.w.power = endpoint; break;
            case SweepVariable::Temperature:
                point.system.temperature = endpoint;
                break;
        }
        const auto rep = check_stability(build_linear_model(point.system));
        std::ostringstream os;
        os << "sweep endpoint " << fmt(endpoint) << ": "
           << (rep.stable ? "stable" : "UNSTABLE")
           << " (spectral abscissa " << fmt(rep.spectral_abscissa) << " rad/s)";
        notes.push_back(os.str());
    }
    return notes;
}

SystemParams reference_params() {
    SystemParams p;
    p.omega_m = kTwoPi * 1.0e7;
    p.q_m = 1.5e5;
    p.mass = 1e-11;  // 10 ng
    p.temperature = 0.05;

    p.b.wavelength = 810.000e-9;
    p.b.power = 2.0e-3;
    p.b.kappa = 0.25 * p.omega_m;
    p.b.detuning = -p.omega_m;
    p.b.g = kTwoPi * 152.0;

    p.c.wavelength = 810.328e-9;
    p.c.power = 2.1e-3;
    p.c.kappa = 0.25 * p.omega_m;
    p.c.detuning = p.omega_m;
    p.c.g = kTwoPi * 152.0;

    p.w.wavelength = 29.979e-3;
    p.w.power = 35e-3;
    p.w.kappa = 0.25 * p.omega_m;
    p.w.detuning = p.omega_m;
    p.w.g = kTwoPi * 0.266;
    return p;
}

FilterBank reference_filters(double omega_m, double tau_scaled) {
    const double tau = tau_scaled / omega_m;
    return FilterBank{{tau, -omega_m}, {tau, omega_m}, {tau, omega_m}};
}

}  // namespace oemswap
