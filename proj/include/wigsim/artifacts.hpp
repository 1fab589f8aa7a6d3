#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "wigsim/wigner.hpp"

namespace wigsim {

// All text artifacts print doubles with %.17g, which round-trips IEEE values
// exactly: a file is a pure function of the numbers, so parallelism width
// cannot change a byte.

// Header "x_over_dx0,p_over_dp0,contrast"; rows x-outer, p-inner.
std::string wigner_csv(const WignerGrid& g);

// Inverse of wigner_csv for compare; scales are not recoverable from the
// file and come back zero.  Malformed header or ragged grid -> ConfigError.
WignerGrid read_wigner_csv(const std::string& path);

std::string table_csv(const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows);

void write_file(const std::string& path, const std::string& bytes);
std::string read_file(const std::string& path);

uint64_t fnv1a(const std::string& bytes);
std::string fnv1a_hex(const std::string& bytes);

// 16-bit big-endian PGM: columns sweep x ascending, rows p descending.  The
// linear value map is recorded in the sidecar JSON; a constant grid maps to 0.
std::string wigner_pgm(const WignerGrid& g, std::string* sidecar_json);

struct ArtifactRef {
    std::string name;  // relative to the output directory
    std::string hash;  // fnv1a hex
};

struct RunRecord {
    std::string subcommand;
    std::string code_version;
    std::vector<std::pair<std::string, std::string>> config_echo;
    // Calibration and diagnostics, NaN when not applicable.
    double t_hold = std::numeric_limits<double>::quiet_NaN();
    double t_hold_us = std::numeric_limits<double>::quiet_NaN();
    double phi0 = std::numeric_limits<double>::quiet_NaN();
    double max_leakage = std::numeric_limits<double>::quiet_NaN();
    double max_norm_drift = std::numeric_limits<double>::quiet_NaN();
    std::vector<std::string> failures;
    std::vector<ArtifactRef> artifacts;
    double wall_ms = 0.0;
};

std::string run_record_json(const RunRecord& rec);

// Short git revision baked in at build time.
std::string code_version();

// One message per artifact that is missing or whose bytes no longer match
// the recorded hash; empty when the record is intact.
std::vector<std::string> verify_artifacts(const RunRecord& rec, const std::string& out_dir);

}  // namespace wigsim
