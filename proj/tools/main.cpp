#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wigsim/artifacts.hpp"
#include "wigsim/calibration.hpp"
#include "wigsim/config.hpp"
#include "wigsim/eigensolver.hpp"
#include "wigsim/errors.hpp"
#include "wigsim/grid.hpp"
#include "wigsim/potentials.hpp"
#include "wigsim/ramsey.hpp"
#include "wigsim/wavefunction.hpp"
#include "wigsim/wigner.hpp"

using namespace wigsim;

namespace {

struct CliArgs {
    std::string config_path;
    std::string out_dir;
    std::string format;
    int jobs = 0;
};

RunConfig load_run(const CliArgs& a) {
    ConfigText text = a.config_path.empty() ? ConfigText{} : load_config_file(a.config_path);
    apply_env_overrides(text, process_env());
    if (a.jobs > 0) text.set("run.jobs", std::to_string(a.jobs));
    if (!a.out_dir.empty()) text.set("run.out", a.out_dir);
    if (!a.format.empty()) text.set("run.format", a.format);
    return resolve_config(text);
}

// Gathers artifacts under the output directory and writes the run record
// last; failures recorded along the way turn into exit code 3.
struct Emitter {
    const RunConfig& rc;
    RunRecord rec;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

    Emitter(const RunConfig& rc_, const std::string& sub) : rc(rc_) {
        rec.subcommand = sub;
        rec.code_version = code_version();
        rec.config_echo = rc.echo;
        std::filesystem::create_directories(rc.out_dir);
    }
    void add(const std::string& name, const std::string& bytes) {
        write_file(rc.out_dir + "/" + name, bytes);
        rec.artifacts.push_back({name, fnv1a_hex(bytes)});
    }
    void add_grid(const std::string& stem, const WignerGrid& g) {
        if (rc.format == "csv" || rc.format == "both") add(stem + ".csv", wigner_csv(g));
        if (rc.format == "pgm" || rc.format == "both") {
            std::string sidecar;
            std::string pgm = wigner_pgm(g, &sidecar);
            add(stem + ".pgm", pgm);
            add(stem + ".pgm.json", sidecar);
        }
    }
    void note_template(const SequenceTemplate& tpl) {
        rec.t_hold = tpl.schedule.t_hold();
        rec.t_hold_us = rc.units.s_from_time(tpl.schedule.t_hold()) * 1e6;
        rec.phi0 = tpl.phi0;
    }
    int finish() {
        rec.wall_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
        write_file(rc.out_dir + "/" + rec.subcommand + "_record.json", run_record_json(rec));
        if (!rec.failures.empty()) {
            for (const auto& f : rec.failures)
                std::fprintf(stderr, "wigsim %s: %s\n", rec.subcommand.c_str(), f.c_str());
            return 3;
        }
        return 0;
    }
};

SequenceTemplate build_template(const RunConfig& rc, const Grid& grid) {
    SequenceTemplate tpl = make_template(rc.model(), rc.units, grid, rc.base_depth, rc.peak_up,
                                         rc.peak_down, rc.sequence);
    if (rc.dt_override > 0) tpl.dt = rc.dt_override;
    return tpl;
}

double perturbative_level(const RunConfig& rc, double omega, int n) {
    if (rc.model_kind == "lattice") return lattice_spectrum_perturbative(rc.base_depth, n);
    if (rc.model_kind == "tweezer")
        return tweezer_spectrum_perturbative(rc.base_depth, rc.waist, n);
    return harmonic_spectrum(omega, rc.base_depth, n);
}

int run_spectrum(const RunConfig& rc) {
    Emitter em(rc, "spectrum");
    Grid grid(rc.grid_points, rc.grid_half_width);
    PotentialModel model = rc.model();
    int levels = rc.n_max + 1;
    EigenBasis basis = stationary_states(model, rc.base_depth, grid, levels);
    double omega = model.omega(rc.base_depth);

    std::vector<std::vector<double>> rows;
    for (int n = 0; n < levels; ++n) {
        double diag = basis.energies[static_cast<size_t>(n)];
        double pert = perturbative_level(rc, omega, n);
        rows.push_back({static_cast<double>(n), diag, harmonic_spectrum(omega, rc.base_depth, n),
                        pert, (pert - diag) / omega});
    }
    em.add("spectrum.csv",
           table_csv({"n", "energy_diag", "energy_harmonic", "energy_perturbative",
                      "pert_minus_diag_over_homega"},
                     rows));

    double wbar = 0.5 * (model.omega(rc.peak_up) + model.omega(rc.peak_down));
    rows.clear();
    for (int n = 0; n < levels; ++n) {
        DifferentialShift ds = differential_shift(model, rc.peak_up, rc.peak_down, n, grid);
        rows.push_back({static_cast<double>(n), ds.exact, ds.harmonic,
                        std::abs(ds.exact - ds.harmonic) / wbar});
    }
    em.add("differential.csv",
           table_csv({"n", "shift_exact", "shift_harmonic", "abs_dev_over_homega"}, rows));
    return em.finish();
}

int run_fock(const RunConfig& rc) {
    Emitter em(rc, "fock");
    Grid grid(rc.grid_points, rc.grid_half_width);
    PotentialModel model = rc.model();
    int levels = rc.n_max + 1;
    EigenBasis basis = stationary_states(model, rc.base_depth, grid, levels);
    std::vector<std::vector<double>> rows;
    for (int n = 0; n < levels; ++n) {
        const WaveFunction& state = basis.states[static_cast<size_t>(n)];
        double energy = basis.energies[static_cast<size_t>(n)];
        rows.push_back({static_cast<double>(n), energy, parity_expectation(state),
                        eigen_residual(model, rc.base_depth, grid, state, energy,
                                       basis.window_points)});
    }
    em.add("fock.csv", table_csv({"n", "energy", "parity", "residual"}, rows));
    return em.finish();
}

int run_parity_scan(const RunConfig& rc) {
    Emitter em(rc, "parity-scan");
    Grid grid(rc.grid_points, rc.grid_half_width);
    SequenceTemplate tpl = build_template(rc, grid);
    em.note_template(tpl);
    std::vector<ParityPoint> scan = parity_scan(rc.n_max, tpl, grid);
    std::vector<std::vector<double>> rows;
    double worst = 0.0;
    for (const ParityPoint& pt : scan) {
        double expected = (pt.n % 2 == 0) ? 1.0 : -1.0;
        rows.push_back({static_cast<double>(pt.n), pt.w, expected, pt.leakage});
        worst = std::max(worst, pt.leakage);
    }
    em.rec.max_leakage = worst;
    em.add("parity.csv", table_csv({"n", "w", "parity", "leakage"}, rows));
    return em.finish();
}

int run_wigner_scan(const RunConfig& rc) {
    Emitter em(rc, "wigner-scan");
    Grid grid(rc.grid_points, rc.grid_half_width);
    PotentialModel model = rc.model();
    EigenBasis basis = stationary_states(model, rc.base_depth, grid, rc.fock_index + 1);
    SequenceTemplate tpl = build_template(rc, grid);
    em.note_template(tpl);
    ScanResult scan = scan_wigner(basis.states[static_cast<size_t>(rc.fock_index)], rc.x_axis(),
                                  rc.p_axis(), tpl, rc.jobs);
    em.rec.max_leakage = scan.max_leakage;
    for (const ScanPointError& e : scan.errors)
        em.rec.failures.push_back("point (" + std::to_string(e.ix) + ", " + std::to_string(e.ip) +
                                  "): " + e.what);
    em.add_grid("wigner", scan.grid);
    return em.finish();
}

int run_oracle(const RunConfig& rc) {
    Emitter em(rc, "oracle");
    Grid grid(rc.grid_points, rc.grid_half_width);
    PotentialModel model = rc.model();
    EigenBasis basis = stationary_states(model, rc.base_depth, grid, rc.fock_index + 1);
    GroundStateScales scales = make_scales(model.omega(rc.base_depth));
    OracleResult oracle = wigner_transform(basis.states[static_cast<size_t>(rc.fock_index)],
                                           rc.x_axis(), rc.p_axis(), scales);
    em.add_grid("oracle", oracle.grid);
    return em.finish();
}

int run_calibrate(const RunConfig& rc) {
    Emitter em(rc, "calibrate");
    Grid grid(rc.grid_points, rc.grid_half_width);
    PotentialModel model = rc.model();
    SequenceTemplate tpl = build_template(rc, grid);
    ThermalEnsemble ens = thermal_weights(rc.ensemble_p0, rc.ensemble_n_max);
    EigenBasis basis = stationary_states(model, rc.base_depth, grid, rc.ensemble_n_max + 1);
    double max_hold = (rc.max_hold > 0) ? rc.max_hold : 2.5 * tpl.schedule.t_hold();
    CalibrationResult cal = calibrate_hold(basis.states, ens, tpl, max_hold, rc.coarse_points,
                                           rc.n_phases, rc.jobs);
    SequenceTemplate tuned = with_hold_time(tpl, cal.t_hold, grid);
    em.note_template(tuned);

    auto curve_csv = [&](const ContrastCurve& curve) {
        std::vector<std::vector<double>> rows;
        for (size_t i = 0; i < curve.hold.size(); ++i)
            rows.push_back({curve.hold[i], rc.units.s_from_time(curve.hold[i]) * 1e6,
                            curve.contrast[i]});
        return table_csv({"hold_internal", "hold_us", "contrast"}, rows);
    };
    em.add("calibration.csv", curve_csv(cal.coarse));
    em.add("calibration_fine.csv", curve_csv(cal.fine));
    for (const CurvePointError& e : cal.coarse.errors)
        em.rec.failures.push_back("coarse point " + std::to_string(e.index) + ": " + e.what);
    for (const CurvePointError& e : cal.fine.errors)
        em.rec.failures.push_back("fine point " + std::to_string(e.index) + ": " + e.what);

    std::printf("T_hold = %.6f us (%.9g internal)\nphi0 = %.9g rad\n", em.rec.t_hold_us,
                em.rec.t_hold, em.rec.phi0);
    return em.finish();
}

int run_compare(const RunConfig& rc, const std::string& a_path, const std::string& b_path,
                double max_rms) {
    Emitter em(rc, "compare");
    WignerGrid a = read_wigner_csv(a_path);
    WignerGrid b = read_wigner_csv(b_path);
    GridDiff diff = compare(a, b);
    nlohmann::ordered_json j;
    j["a"] = a_path;
    j["b"] = b_path;
    j["max_abs"] = diff.max_abs;
    j["rms"] = diff.rms;
    em.add("compare.json", j.dump(2) + "\n");
    std::printf("max_abs = %.9g\nrms = %.9g\n", diff.max_abs, diff.rms);
    if (max_rms >= 0 && !(diff.rms <= max_rms))
        em.rec.failures.push_back("rms " + std::to_string(diff.rms) + " exceeds --max-rms " +
                                  std::to_string(max_rms));
    return em.finish();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ramsey-interferometric measurement of motional Wigner functions"};
    app.require_subcommand(1);
    CliArgs args;
    app.add_option("--config", args.config_path, "TOML-style config file");
    app.add_option("--out", args.out_dir, "output directory (overrides run.out)");
    app.add_option("--jobs", args.jobs, "worker threads (overrides run.jobs)");
    app.add_option("--format", args.format, "csv|pgm|both (overrides run.format)");

    auto* sub_spectrum =
        app.add_subcommand("spectrum", "eigenlevel and differential-shift tables");
    auto* sub_fock = app.add_subcommand("fock", "trap-level construction check");
    auto* sub_calibrate =
        app.add_subcommand("calibrate", "hold time from the thermal contrast collapse");
    auto* sub_parity = app.add_subcommand("parity-scan", "w(n) for the first trap levels");
    auto* sub_scan =
        app.add_subcommand("wigner-scan", "interferometric C(x, p) map of one trap level");
    auto* sub_oracle =
        app.add_subcommand("oracle", "integral-transform C(x, p) of the same level");
    auto* sub_compare = app.add_subcommand("compare", "difference metrics of two grid CSVs");
    std::string a_path, b_path;
    double max_rms = -1.0;
    sub_compare->add_option("a", a_path, "first CSV")->required();
    sub_compare->add_option("b", b_path, "second CSV")->required();
    sub_compare->add_option("--max-rms", max_rms, "fail when rms exceeds this");
    for (CLI::App* sub : app.get_subcommands({}))
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        RunConfig rc = load_run(args);
        if (sub_spectrum->parsed()) return run_spectrum(rc);
        if (sub_fock->parsed()) return run_fock(rc);
        if (sub_calibrate->parsed()) return run_calibrate(rc);
        if (sub_parity->parsed()) return run_parity_scan(rc);
        if (sub_scan->parsed()) return run_wigner_scan(rc);
        if (sub_oracle->parsed()) return run_oracle(rc);
        if (sub_compare->parsed()) return run_compare(rc, a_path, b_path, max_rms);
        return 2;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "wigsim: config error: %s\n", e.what());
        return 2;
    } catch (const CalibrationError& e) {
        std::fprintf(stderr, "wigsim: calibration failed: %s\n", e.what());
        return 4;
    } catch (const DomainError& e) {
        std::fprintf(stderr, "wigsim: numerical error: %s\n", e.what());
        return 3;
    } catch (const NumericalError& e) {
        std::fprintf(stderr, "wigsim: numerical error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "wigsim: %s\n", e.what());
        return 1;
    }
}
