#include "wigsim/artifacts.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "wigsim/errors.hpp"

namespace wigsim {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_field(const std::string& tok, const std::string& where) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ConfigError(where + ": bad number \"" + tok + "\"");
    return v;
}

nlohmann::ordered_json finite_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

}  // namespace

std::string wigner_csv(const WignerGrid& g) {
    std::string out = "x_over_dx0,p_over_dp0,contrast\n";
    for (size_t ix = 0; ix < g.x.size(); ++ix)
        for (size_t ip = 0; ip < g.p.size(); ++ip) {
            out += fmt(g.x[ix]);
            out += ',';
            out += fmt(g.p[ip]);
            out += ',';
            out += fmt(g.c[ix * g.p.size() + ip]);
            out += '\n';
        }
    return out;
}

WignerGrid read_wigner_csv(const std::string& path) {
    std::istringstream in(read_file(path));
    std::string line;
    if (!std::getline(in, line)) throw ConfigError(path + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "x_over_dx0,p_over_dp0,contrast")
        throw ConfigError(path + ": unexpected header \"" + line + "\"");
    std::vector<double> xs, ps, cs;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::string where = path + " line " + std::to_string(lineno);
        size_t c1 = line.find(',');
        size_t c2 = (c1 == std::string::npos) ? std::string::npos : line.find(',', c1 + 1);
        if (c2 == std::string::npos) throw ConfigError(where + ": expected three fields");
        xs.push_back(parse_field(line.substr(0, c1), where));
        ps.push_back(parse_field(line.substr(c1 + 1, c2 - c1 - 1), where));
        cs.push_back(parse_field(line.substr(c2 + 1), where));
    }
    if (cs.empty()) throw ConfigError(path + ": no data rows");

    WignerGrid g;
    // Rows are x-outer: the p axis is the leading run of constant x.
    size_t np = 1;
    while (np < xs.size() && xs[np] == xs[0]) ++np;
    if (xs.size() % np != 0) throw ConfigError(path + ": ragged grid");
    size_t nx = xs.size() / np;
    g.p.assign(ps.begin(), ps.begin() + static_cast<long>(np));
    for (size_t ix = 0; ix < nx; ++ix) g.x.push_back(xs[ix * np]);
    for (size_t ix = 0; ix < nx; ++ix)
        for (size_t ip = 0; ip < np; ++ip) {
            size_t i = ix * np + ip;
            if (xs[i] != g.x[ix] || ps[i] != g.p[ip])
                throw ConfigError(path + ": rows are not a row-major rectangular grid");
        }
    g.c = std::move(cs);
    g.scales = GroundStateScales{0.0, 0.0, 0.0};
    return g;
}

std::string table_csv(const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows) {
    std::string out;
    for (size_t i = 0; i < header.size(); ++i) {
        if (i) out += ',';
        out += header[i];
    }
    out += '\n';
    for (const auto& row : rows) {
        if (row.size() != header.size()) throw ConfigError("table_csv: ragged row");
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += fmt(row[i]);
        }
        out += '\n';
    }
    return out;
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot open for writing: " + path);
    out.write(bytes.data(), static_cast<long>(bytes.size()));
    if (!out) throw ConfigError("short write: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

uint64_t fnv1a(const std::string& bytes) {
    uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string fnv1a_hex(const std::string& bytes) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a(bytes)));
    return buf;
}

std::string wigner_pgm(const WignerGrid& g, std::string* sidecar_json) {
    size_t nx = g.x.size(), np = g.p.size();
    if (nx == 0 || np == 0) throw ConfigError("wigner_pgm: empty grid");
    double lo = g.c[0], hi = g.c[0];
    for (double v : g.c) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    std::string out = "P5\n" + std::to_string(nx) + " " + std::to_string(np) + "\n65535\n";
    double span = hi - lo;
    for (size_t ip = np; ip-- > 0;)
        for (size_t ix = 0; ix < nx; ++ix) {
            double v = g.c[ix * np + ip];
            unsigned code = (span > 0) ? static_cast<unsigned>(
                                             std::lround((v - lo) / span * 65535.0))
                                       : 0u;
            out += static_cast<char>((code >> 8) & 0xff);
            out += static_cast<char>(code & 0xff);
        }
    if (sidecar_json) {
        nlohmann::ordered_json j;
        j["format"] = "pgm16";
        j["min"] = lo;
        j["max"] = hi;
        j["nx"] = nx;
        j["np"] = np;
        j["columns"] = "x_over_dx0 ascending";
        j["rows"] = "p_over_dp0 descending";
        *sidecar_json = j.dump(2) + "\n";
    }
    return out;
}

std::string run_record_json(const RunRecord& rec) {
    nlohmann::ordered_json j;
    j["subcommand"] = rec.subcommand;
    j["code_version"] = rec.code_version;
    nlohmann::ordered_json cfg;
    for (const auto& [k, v] : rec.config_echo) cfg[k] = v;
    j["config"] = cfg;
    nlohmann::ordered_json res;
    res["t_hold_internal"] = finite_or_null(rec.t_hold);
    res["t_hold_us"] = finite_or_null(rec.t_hold_us);
    res["phi0_rad"] = finite_or_null(rec.phi0);
    res["max_leakage"] = finite_or_null(rec.max_leakage);
    res["max_norm_drift"] = finite_or_null(rec.max_norm_drift);
    j["results"] = res;
    j["failures"] = rec.failures;
    nlohmann::ordered_json arts = nlohmann::ordered_json::array();
    for (const auto& a : rec.artifacts) arts.push_back({{"name", a.name}, {"fnv1a", a.hash}});
    j["artifacts"] = arts;
    j["wall_ms"] = rec.wall_ms;
    return j.dump(2) + "\n";
}

std::string code_version() {
#ifdef WIGSIM_GIT_REV
    return WIGSIM_GIT_REV;
#else
    return "unversioned";
#endif
}

std::vector<std::string> verify_artifacts(const RunRecord& rec, const std::string& out_dir) {
    std::vector<std::string> bad;
    for (const auto& a : rec.artifacts) {
        std::string path = out_dir + "/" + a.name;
        try {
            std::string got = fnv1a_hex(read_file(path));
            if (got != a.hash)
                bad.push_back(a.name + ": hash " + got + " does not match record " + a.hash);
        } catch (const ConfigError&) {
            bad.push_back(a.name + ": missing");
        }
    }
    return bad;
}

}  // namespace wigsim
