#include "wigsim/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <mutex>
#include <string>

#include "wigsim/errors.hpp"
#include "wigsim/parallel.hpp"

namespace wigsim {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Template with the hold replaced and the tail of the timeline shifted.
// phi0 is left stale: the fringe amplitude does not depend on it.
SequenceTemplate shifted_hold(const SequenceTemplate& tpl, double t_hold) {
    SequenceTemplate out = tpl;
    out.schedule = tpl.schedule.with_hold(t_hold);
    const double shift = out.schedule.window_end() - tpl.schedule.window_end();
    out.t2 = tpl.t2 + shift;
    out.td = tpl.td + shift;
    return out;
}

}  // namespace

ThermalEnsemble thermal_weights(double p0, int n_max) {
    if (!(p0 > 0.0 && p0 <= 1.0))
        throw ConfigError("thermal_weights: ground-state fraction must be in (0, 1]");
    if (n_max < 0) throw ConfigError("thermal_weights: n_max must be >= 0");

    ThermalEnsemble ens;
    ens.p0 = p0;
    ens.n_max = n_max;
    ens.weights.resize(n_max + 1);
    double total = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        ens.weights[n] = p0 * std::pow(1.0 - p0, n);
        total += ens.weights[n];
    }
    for (double& w : ens.weights) w /= total;
    return ens;
}

ContrastCurve contrast_vs_hold(const std::vector<WaveFunction>& fock,
                               const ThermalEnsemble& ensemble,
                               const std::vector<double>& hold_times,
                               const SequenceTemplate& tpl, double x_over_dx0,
                               double p_over_dp0, int n_phases, int jobs) {
    if (n_phases < 8)
        throw ConfigError("contrast_vs_hold: need at least 8 fringe phases");
    if (hold_times.empty()) throw ConfigError("contrast_vs_hold: no hold times");
    const int levels = static_cast<int>(ensemble.weights.size());
    if (levels == 0 || levels > static_cast<int>(fock.size()))
        throw ConfigError("contrast_vs_hold: ensemble occupies missing trap levels");

    const int nh = static_cast<int>(hold_times.size());
    ContrastCurve curve;
    curve.hold = hold_times;
    curve.contrast.assign(nh, std::numeric_limits<double>::quiet_NaN());

    // w(phi) per (hold, level); the reduction over levels and the fit are
    // deterministic regardless of the thread partition.
    std::vector<double> fringe(static_cast<size_t>(nh) * levels * n_phases, 0.0);
    std::vector<char> failed(nh, 0);
    std::vector<std::string> what(nh);
    std::mutex record;

    parallel_for(nh * levels, jobs, [&](int idx) {
        const int ih = idx / levels;
        const int n = idx % levels;
        if (ensemble.weights[n] == 0.0) return;
        try {
            const SequenceTemplate run = shifted_hold(tpl, hold_times[ih]);
            SequenceSpec spec = instantiate(run, x_over_dx0, p_over_dp0);
            RamseyDiagnostics diag;
            const SpinorState at_t2 = evolve_to_second_pulse(fock[n], spec, diag);
            double* row = &fringe[(static_cast<size_t>(ih) * levels + n) * n_phases];
            for (int k = 0; k < n_phases; ++k)
                row[k] = readout(at_t2, 2.0 * kPi * k / n_phases);
        } catch (const std::exception& e) {
            std::lock_guard<std::mutex> hold(record);
            if (!failed[ih]) {
                failed[ih] = 1;
                what[ih] = e.what();
            }
        }
    });

    for (int ih = 0; ih < nh; ++ih) {
        if (failed[ih]) {
            curve.errors.push_back({ih, what[ih]});
            continue;
        }
        // Least squares for w = a cos(phi) + b sin(phi) on the uniform phase
        // grid; the amplitude is the fringe contrast.
        double a = 0.0, b = 0.0;
        for (int k = 0; k < n_phases; ++k) {
            double w = 0.0;
            for (int n = 0; n < levels; ++n)
                w += ensemble.weights[n] *
                     fringe[(static_cast<size_t>(ih) * levels + n) * n_phases + k];
            const double phi = 2.0 * kPi * k / n_phases;
            a += w * std::cos(phi);
            b += w * std::sin(phi);
        }
        const double contrast = 2.0 * std::hypot(a, b) / n_phases;
        if (contrast > 1.0 + 1e-6) {
            curve.errors.push_back(
                {ih, "contrast " + std::to_string(contrast) + " above the fringe bound"});
            continue;
        }
        curve.contrast[ih] = contrast;
    }
    return curve;
}

double find_collapse(const ContrastCurve& curve) {
    std::vector<double> t, c;
    for (size_t i = 0; i < curve.hold.size(); ++i) {
        if (std::isnan(curve.contrast[i])) continue;
        t.push_back(curve.hold[i]);
        c.push_back(curve.contrast[i]);
    }
    if (t.size() < 3)
        throw CalibrationError("find_collapse: fewer than three usable points");

    for (size_t i = 1, k = t.size(); i + 1 < k; ++i) {
        if (!(c[i - 1] > c[i] && c[i] <= c[i + 1])) continue;

        // Parabola through the three bracketing points; fall back to the
        // sample on a degenerate (flat or kinked) bracket.
        const double dl = t[i] - t[i - 1], dr = t[i] - t[i + 1];
        const double num = dl * dl * (c[i] - c[i + 1]) - dr * dr * (c[i] - c[i - 1]);
        const double den = dl * (c[i] - c[i + 1]) - dr * (c[i] - c[i - 1]);
        if (std::abs(den) < 1e-300) return t[i];
        const double refined = t[i] - 0.5 * num / den;
        return refined > t[i - 1] && refined < t[i + 1] ? refined : t[i];
    }
    throw CalibrationError("find_collapse: no interior contrast minimum in the scan");
}

CalibrationResult calibrate_hold(const std::vector<WaveFunction>& fock,
                                 const ThermalEnsemble& ensemble,
                                 const SequenceTemplate& tpl, double max_hold,
                                 int coarse_points, int n_phases, int jobs) {
    if (!(max_hold > 0.0)) throw ConfigError("calibrate_hold: max_hold must be positive");
    if (coarse_points < 5) throw ConfigError("calibrate_hold: need at least 5 coarse points");

    CalibrationResult res;
    std::vector<double> holds(coarse_points);
    for (int i = 0; i < coarse_points; ++i)
        holds[i] = max_hold * (i + 1) / coarse_points;
    res.coarse = contrast_vs_hold(fock, ensemble, holds, tpl, 0.0, 0.0, n_phases, jobs);
    const double guess = find_collapse(res.coarse);

    const double spacing = max_hold / coarse_points;
    std::vector<double> refine(9);
    for (int i = 0; i < 9; ++i) {
        refine[i] = guess + spacing * (i - 4) / 4.0;
        refine[i] = std::max(refine[i], spacing * 1e-3);
    }
    res.fine = contrast_vs_hold(fock, ensemble, refine, tpl, 0.0, 0.0, n_phases, jobs);
    res.t_hold = find_collapse(res.fine);
    return res;
}

}  // namespace wigsim
