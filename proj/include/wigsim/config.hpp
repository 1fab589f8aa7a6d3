#pragma once

#include <string>
#include <utility>
#include <vector>

#include "wigsim/potentials.hpp"
#include "wigsim/ramsey.hpp"
#include "wigsim/units.hpp"

namespace wigsim {

// Flat dotted-key view of a TOML-style config file: [section] headers become
// key prefixes, values keep their raw text (quotes stripped).  Insertion
// order is preserved so the echo in run records is stable.
struct ConfigText {
    std::vector<std::pair<std::string, std::string>> entries;

    const std::string* find(const std::string& key) const;
    void set(const std::string& key, const std::string& value);
};

// Accepts comments (#), [section] headers and key = value lines.  Values are
// either bare tokens or double-quoted strings.  Duplicate keys, stray text
// and unterminated quotes -> ConfigError with the line number.
ConfigText parse_config_text(const std::string& text);

ConfigText load_config_file(const std::string& path);

// Env var spelling of a config key ("trap.base_depth" -> "WIGSIM_TRAP_BASE_DEPTH").
std::string env_name(const std::string& key);

// Pairs are (env var name, value); non-WIGSIM_ names are ignored.  Matching
// vars are translated back to dotted keys and replace file values; a typo'd
// variable produces an unknown key that resolve_config rejects.
void apply_env_overrides(ConfigText& cfg,
                         const std::vector<std::pair<std::string, std::string>>& env);

// Snapshot of the process environment for apply_env_overrides.
std::vector<std::pair<std::string, std::string>> process_env();

// Fully resolved run parameters.  Physical quantities are in internal units
// (hbar = m = 1, lengths in 1/k); every physical key in the file must carry
// an explicit unit suffix.
struct RunConfig {
    UnitSystem units = cesium_units();

    std::string model_kind = "lattice";  // lattice | harmonic | tweezer
    double waist = 0.0;                  // tweezer only
    double base_depth = 0.0;
    double peak_up = 0.0;
    double peak_down = 0.0;

    int grid_points = 512;
    double grid_half_width = 0.0;

    TemplateOptions sequence{};  // t_hold < 0 requests the nominal condition
    double dt_override = -1.0;   // < 0 keeps the steps_per_period timing

    double x_min = -3.0, x_max = 3.0;
    double p_min = -3.0, p_max = 3.0;
    int x_points = 21, p_points = 21;
    int fock_index = 0;
    int n_max = 9;

    double ensemble_p0 = 0.5;
    int ensemble_n_max = 9;
    double max_hold = -1.0;  // < 0: 2.5x the nominal hold
    int coarse_points = 41;
    int n_phases = 16;

    int jobs = 1;
    std::string out_dir = "out";
    std::string format = "csv";  // csv | pgm | both
    long seed = 0;               // reserved, pipeline is deterministic

    // Effective raw config, schema order, defaults filled in.  Re-loadable.
    std::vector<std::pair<std::string, std::string>> echo;

    PotentialModel model() const;
    std::vector<double> x_axis() const;
    std::vector<double> p_axis() const;
};

// Schema validation: unknown keys, missing units, malformed numbers and
// out-of-range values -> ConfigError naming the dotted key path.
RunConfig resolve_config(const ConfigText& cfg);

}  // namespace wigsim
