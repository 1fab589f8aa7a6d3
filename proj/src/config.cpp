#include "wigsim/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "wigsim/errors.hpp"

extern char** environ;

namespace wigsim {

namespace {

enum class Dim {
    Str,     // bare word
    Integer,
    LongInt,
    Real,    // dimensionless
    Mass,    // -> kg
    Length,  // -> m
    Time,    // -> s
    Energy,  // -> internal, needs the unit system
    Hold,    // "nominal" | time -> internal
    Auto,    // "auto" | time -> internal
};

struct SchemaRow {
    const char* key;
    Dim dim;
    const char* preset;
};

// Schema order is the echo order.
constexpr SchemaRow kSchema[] = {
    {"atom.mass", Dim::Mass, "132.905451931 u"},
    {"trap.model", Dim::Str, "lattice"},
    {"trap.lambda", Dim::Length, "866 nm"},
    {"trap.waist", Dim::Length, "0 m"},
    {"trap.base_depth", Dim::Energy, "18 uK"},
    {"trap.peak_up", Dim::Energy, "27 uK"},
    {"trap.peak_down", Dim::Energy, "22 uK"},
    {"grid.points", Dim::Integer, "512"},
    {"grid.half_width", Dim::Real, "6.283185307179586"},
    {"sequence.prep", Dim::Time, "1 us"},
    {"sequence.pulse_to_switch", Dim::Time, "200 ns"},
    {"sequence.switch", Dim::Time, "300 ns"},
    {"sequence.settle", Dim::Time, "500 ns"},
    {"sequence.ramp", Dim::Time, "15 us"},
    {"sequence.post", Dim::Time, "500 ns"},
    {"sequence.detect", Dim::Time, "500 ns"},
    {"sequence.hold", Dim::Hold, "nominal"},
    {"sequence.dt", Dim::Auto, "auto"},
    {"sequence.steps_per_period", Dim::Integer, "500"},
    {"scan.x_min", Dim::Real, "-3"},
    {"scan.x_max", Dim::Real, "3"},
    {"scan.x_points", Dim::Integer, "21"},
    {"scan.p_min", Dim::Real, "-3"},
    {"scan.p_max", Dim::Real, "3"},
    {"scan.p_points", Dim::Integer, "21"},
    {"scan.fock", Dim::Integer, "0"},
    {"scan.n_max", Dim::Integer, "9"},
    {"calibration.p0", Dim::Real, "0.5"},
    {"calibration.n_max", Dim::Integer, "9"},
    {"calibration.max_hold", Dim::Auto, "auto"},
    {"calibration.coarse_points", Dim::Integer, "41"},
    {"calibration.phases", Dim::Integer, "16"},
    {"run.jobs", Dim::Integer, "1"},
    {"run.out", Dim::Str, "out"},
    {"run.format", Dim::Str, "csv"},
    {"run.seed", Dim::LongInt, "0"},
};

const SchemaRow* schema_find(const std::string& key) {
    for (const auto& row : kSchema)
        if (key == row.key) return &row;
    return nullptr;
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void bad_line(int line, const std::string& what) {
    throw ConfigError("config line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> tokens(const std::string& raw) {
    std::vector<std::string> out;
    std::istringstream in(raw);
    std::string t;
    while (in >> t) out.push_back(t);
    return out;
}

double parse_number(const std::string& key, const std::string& tok) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ConfigError(key + ": not a number: \"" + tok + "\"");
    return v;
}

long parse_integer(const std::string& key, const std::string& raw) {
    auto toks = tokens(raw);
    if (toks.size() != 1) throw ConfigError(key + ": expected a bare integer, got \"" + raw + "\"");
    long v = 0;
    const std::string& tok = toks[0];
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ConfigError(key + ": not an integer: \"" + tok + "\"");
    return v;
}

double parse_real(const std::string& key, const std::string& raw) {
    auto toks = tokens(raw);
    if (toks.size() != 1)
        throw ConfigError(key + ": expected a dimensionless number, got \"" + raw + "\"");
    return parse_number(key, toks[0]);
}

// "NUMBER UNIT" with the unit mandatory.
std::pair<double, std::string> parse_quantity(const std::string& key, const std::string& raw,
                                              const char* wanted) {
    auto toks = tokens(raw);
    if (toks.size() != 2)
        throw ConfigError(key + ": expected \"<number> <" + std::string(wanted) + " unit>\", got \"" +
                          raw + "\"");
    return {parse_number(key, toks[0]), toks[1]};
}

double parse_mass_kg(const std::string& key, const std::string& raw) {
    auto [v, unit] = parse_quantity(key, raw, "mass");
    if (unit == "u") return v * si::atomic_mass_unit;
    if (unit == "kg") return v;
    throw ConfigError(key + ": unknown mass unit \"" + unit + "\" (use u, kg)");
}

double parse_length_m(const std::string& key, const std::string& raw) {
    auto [v, unit] = parse_quantity(key, raw, "length");
    if (unit == "nm") return v * 1e-9;
    if (unit == "um") return v * 1e-6;
    if (unit == "mm") return v * 1e-3;
    if (unit == "m") return v;
    throw ConfigError(key + ": unknown length unit \"" + unit + "\" (use nm, um, mm, m)");
}

double parse_time_s(const std::string& key, const std::string& raw) {
    auto [v, unit] = parse_quantity(key, raw, "time");
    if (unit == "ns") return v * 1e-9;
    if (unit == "us") return v * 1e-6;
    if (unit == "ms") return v * 1e-3;
    if (unit == "s") return v;
    throw ConfigError(key + ": unknown time unit \"" + unit + "\" (use ns, us, ms, s)");
}

double parse_energy_internal(const std::string& key, const std::string& raw,
                             const UnitSystem& units) {
    auto [v, unit] = parse_quantity(key, raw, "energy");
    if (unit == "uK") return units.energy_from_uK(v);
    if (unit == "mK") return units.energy_from_uK(v * 1e3);
    if (unit == "K") return units.energy_from_uK(v * 1e6);
    if (unit == "Erec") return units.energy_from_recoils(v);
    if (unit == "J") return units.energy_from_J(v);
    throw ConfigError(key + ": unknown energy unit \"" + unit + "\" (use uK, mK, K, Erec, J)");
}

std::string parse_word(const std::string& key, const std::string& raw) {
    auto toks = tokens(raw);
    if (toks.size() != 1) throw ConfigError(key + ": expected a single word, got \"" + raw + "\"");
    return toks[0];
}

void require(bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
}

}  // namespace

const std::string* ConfigText::find(const std::string& key) const {
    for (const auto& [k, v] : entries)
        if (k == key) return &v;
    return nullptr;
}

void ConfigText::set(const std::string& key, const std::string& value) {
    for (auto& [k, v] : entries)
        if (k == key) {
            v = value;
            return;
        }
    entries.emplace_back(key, value);
}

ConfigText parse_config_text(const std::string& text) {
    ConfigText cfg;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        // Cut # comments outside quotes.
        bool quoted = false;
        for (size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '"') quoted = !quoted;
            if (line[i] == '#' && !quoted) {
                line.resize(i);
                break;
            }
        }
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') bad_line(lineno, "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) bad_line(lineno, "empty section header");
            for (char c : section)
                if (!std::islower(static_cast<unsigned char>(c)) && c != '_')
                    bad_line(lineno, "bad section name \"" + section + "\"");
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos) bad_line(lineno, "expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) bad_line(lineno, "empty key");
        for (char c : key)
            if (!std::islower(static_cast<unsigned char>(c)) &&
                !std::isdigit(static_cast<unsigned char>(c)) && c != '_' && c != '.')
                bad_line(lineno, "bad key \"" + key + "\"");
        if (key.find('.') == std::string::npos) {
            if (section.empty()) bad_line(lineno, "key \"" + key + "\" outside any [section]");
            key = section + "." + key;
        }
        if (value.empty()) bad_line(lineno, "empty value for \"" + key + "\"");
        if (value.front() == '"') {
            if (value.size() < 2 || value.back() != '"')
                bad_line(lineno, "unterminated quoted value");
            value = value.substr(1, value.size() - 2);
            if (value.find('"') != std::string::npos)
                bad_line(lineno, "embedded quote in value");
        } else if (value.find(' ') != std::string::npos || value.find('\t') != std::string::npos) {
            bad_line(lineno, "unquoted value with spaces; quote it");
        }
        if (cfg.find(key)) bad_line(lineno, "duplicate key \"" + key + "\"");
        cfg.entries.emplace_back(key, value);
    }
    return cfg;
}

ConfigText load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::string env_name(const std::string& key) {
    std::string out = "WIGSIM_";
    for (char c : key) out += (c == '.') ? '_' : static_cast<char>(std::toupper(c));
    return out;
}

void apply_env_overrides(ConfigText& cfg,
                         const std::vector<std::pair<std::string, std::string>>& env) {
    const std::string prefix = "WIGSIM_";
    for (const auto& [name, value] : env) {
        if (name.rfind(prefix, 0) != 0) continue;
        std::string rest = name.substr(prefix.size());
        size_t us = rest.find('_');
        if (rest.empty() || us == std::string::npos || us == 0 || us + 1 == rest.size())
            throw ConfigError(name + ": cannot map to a config key (want WIGSIM_SECTION_KEY)");
        std::string key;
        for (size_t i = 0; i < rest.size(); ++i)
            key += (i == us) ? '.' : static_cast<char>(std::tolower(rest[i]));
        cfg.set(key, value);
    }
}

std::vector<std::pair<std::string, std::string>> process_env() {
    std::vector<std::pair<std::string, std::string>> out;
    for (char** p = environ; p && *p; ++p) {
        const char* eq = std::strchr(*p, '=');
        if (!eq) continue;
        out.emplace_back(std::string(*p, static_cast<size_t>(eq - *p)), std::string(eq + 1));
    }
    return out;
}

PotentialModel RunConfig::model() const {
    if (model_kind == "lattice") return PotentialModel::lattice();
    if (model_kind == "harmonic") return PotentialModel::harmonic_of_lattice(base_depth);
    return PotentialModel::tweezer(waist);
}

static std::vector<double> linspace_axis(double lo, double hi, int n) {
    std::vector<double> out(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        out[static_cast<size_t>(i)] = (n == 1) ? lo : lo + (hi - lo) * i / (n - 1);
    return out;
}

std::vector<double> RunConfig::x_axis() const { return linspace_axis(x_min, x_max, x_points); }
std::vector<double> RunConfig::p_axis() const { return linspace_axis(p_min, p_max, p_points); }

RunConfig resolve_config(const ConfigText& cfg) {
    for (const auto& [key, value] : cfg.entries) {
        (void)value;
        if (!schema_find(key)) throw ConfigError(key + ": unknown config key");
    }
    auto raw = [&](const char* key) -> std::string {
        if (const std::string* v = cfg.find(key)) return *v;
        return schema_find(key)->preset;
    };

    RunConfig rc;
    double mass_kg = parse_mass_kg("atom.mass", raw("atom.mass"));
    double lambda_m = parse_length_m("trap.lambda", raw("trap.lambda"));
    require(mass_kg > 0, "atom.mass: must be positive");
    require(lambda_m > 0, "trap.lambda: must be positive");
    rc.units = UnitSystem(mass_kg, lambda_m);

    auto energy = [&](const char* key) {
        return parse_energy_internal(key, raw(key), rc.units);
    };
    auto time_s = [&](const char* key) { return parse_time_s(key, raw(key)); };
    auto integer = [&](const char* key) { return parse_integer(key, raw(key)); };
    auto real = [&](const char* key) { return parse_real(key, raw(key)); };

    rc.model_kind = parse_word("trap.model", raw("trap.model"));
    require(rc.model_kind == "lattice" || rc.model_kind == "harmonic" ||
                rc.model_kind == "tweezer",
            "trap.model: must be lattice, harmonic or tweezer");
    rc.waist = rc.units.length_from_m(parse_length_m("trap.waist", raw("trap.waist")));
    rc.base_depth = energy("trap.base_depth");
    rc.peak_up = energy("trap.peak_up");
    rc.peak_down = energy("trap.peak_down");
    require(rc.base_depth > 0, "trap.base_depth: must be positive");
    require(rc.peak_up > 0, "trap.peak_up: must be positive");
    require(rc.peak_down > 0, "trap.peak_down: must be positive");
    if (rc.model_kind == "tweezer")
        require(rc.waist > 0, "trap.waist: tweezer model needs a positive waist");

    rc.grid_points = static_cast<int>(integer("grid.points"));
    require(rc.grid_points >= 16, "grid.points: must be >= 16");
    rc.grid_half_width = real("grid.half_width");
    require(rc.grid_half_width > 0, "grid.half_width: must be positive");

    rc.sequence.t_prep_s = time_s("sequence.prep");
    rc.sequence.t_pulse_to_switch_s = time_s("sequence.pulse_to_switch");
    rc.sequence.t_switch_s = time_s("sequence.switch");
    rc.sequence.t_settle_s = time_s("sequence.settle");
    rc.sequence.t_ramp_s = time_s("sequence.ramp");
    rc.sequence.t_post_s = time_s("sequence.post");
    rc.sequence.t_detect_s = time_s("sequence.detect");
    {
        const std::string& h = raw("sequence.hold");
        rc.sequence.t_hold =
            (trim(h) == "nominal") ? -1.0
                                   : rc.units.time_from_s(parse_time_s("sequence.hold", h));
    }
    {
        const std::string& d = raw("sequence.dt");
        rc.dt_override =
            (trim(d) == "auto") ? -1.0 : rc.units.time_from_s(parse_time_s("sequence.dt", d));
        if (rc.dt_override >= 0)
            require(rc.dt_override > 0, "sequence.dt: must be positive or \"auto\"");
    }
    rc.sequence.steps_per_period = static_cast<int>(integer("sequence.steps_per_period"));
    require(rc.sequence.steps_per_period >= 1, "sequence.steps_per_period: must be >= 1");

    rc.x_min = real("scan.x_min");
    rc.x_max = real("scan.x_max");
    rc.x_points = static_cast<int>(integer("scan.x_points"));
    rc.p_min = real("scan.p_min");
    rc.p_max = real("scan.p_max");
    rc.p_points = static_cast<int>(integer("scan.p_points"));
    require(rc.x_points >= 1 && rc.p_points >= 1, "scan.x_points/p_points: must be >= 1");
    require(rc.x_max >= rc.x_min, "scan.x_max: must be >= scan.x_min");
    require(rc.p_max >= rc.p_min, "scan.p_max: must be >= scan.p_min");
    rc.fock_index = static_cast<int>(integer("scan.fock"));
    require(rc.fock_index >= 0, "scan.fock: must be >= 0");
    rc.n_max = static_cast<int>(integer("scan.n_max"));
    require(rc.n_max >= 0, "scan.n_max: must be >= 0");

    rc.ensemble_p0 = real("calibration.p0");
    require(rc.ensemble_p0 > 0 && rc.ensemble_p0 <= 1, "calibration.p0: must be in (0, 1]");
    rc.ensemble_n_max = static_cast<int>(integer("calibration.n_max"));
    require(rc.ensemble_n_max >= 0, "calibration.n_max: must be >= 0");
    {
        const std::string& m = raw("calibration.max_hold");
        rc.max_hold = (trim(m) == "auto")
                          ? -1.0
                          : rc.units.time_from_s(parse_time_s("calibration.max_hold", m));
        if (rc.max_hold >= 0)
            require(rc.max_hold > 0, "calibration.max_hold: must be positive or \"auto\"");
    }
    rc.coarse_points = static_cast<int>(integer("calibration.coarse_points"));
    require(rc.coarse_points >= 5, "calibration.coarse_points: must be >= 5");
    rc.n_phases = static_cast<int>(integer("calibration.phases"));
    require(rc.n_phases >= 8, "calibration.phases: must be >= 8");

    rc.jobs = static_cast<int>(integer("run.jobs"));
    require(rc.jobs >= 1, "run.jobs: must be >= 1");
    rc.out_dir = raw("run.out");
    require(!rc.out_dir.empty(), "run.out: must not be empty");
    rc.format = parse_word("run.format", raw("run.format"));
    require(rc.format == "csv" || rc.format == "pgm" || rc.format == "both",
            "run.format: must be csv, pgm or both");
    rc.seed = parse_integer("run.seed", raw("run.seed"));

    rc.echo.clear();
    for (const auto& row : kSchema) rc.echo.emplace_back(row.key, raw(row.key));
    return rc;
}

}  // namespace wigsim
