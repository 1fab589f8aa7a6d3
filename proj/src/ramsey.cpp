#include "wigsim/ramsey.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <string>
#include <vector>

#include "wigsim/eigensolver.hpp"
#include "wigsim/errors.hpp"
#include "wigsim/parallel.hpp"
#include "wigsim/propagator.hpp"

namespace wigsim {

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

void validate(const SequenceSpec& spec) {
    if (spec.dt <= 0.0) throw ConfigError("sequence: dt must be positive");
    if (spec.leak_radius <= 0.0) throw ConfigError("sequence: leak radius must be positive");
    if (spec.checkpoint_stride < 0) throw ConfigError("sequence: negative checkpoint stride");
    if (!(spec.t0 <= spec.t1 && spec.t1 <= spec.t2 && spec.t2 <= spec.td))
        throw ConfigError("sequence: times must satisfy t0 <= t1 <= t2 <= td");

    const double tw = spec.field.trajectory.t_on();
    const double t_switch = spec.field.trajectory.t_switch();
    if (!spec.field.trajectory.is_static()) {
        if (spec.displace_before_first_pulse) {
            if (!(spec.t0 <= tw && tw <= spec.t1))
                throw ConfigError("sequence: displacement-first ordering needs t0 <= tW <= t1");
        } else if (!(spec.t1 <= tw)) {
            throw ConfigError("sequence: displacement switch precedes the first pulse");
        }
    }

    const double ws = spec.field.schedule.window_start();
    const double we = spec.field.schedule.window_end();
    if (!(spec.t1 <= ws))
        throw ConfigError("sequence: differential window opens before the first pulse");
    if (!spec.field.trajectory.is_static() && !(ws >= tw + t_switch))
        throw ConfigError("sequence: differential window opens before the switch completes");
    if (!(we <= spec.t2))
        throw ConfigError("sequence: differential window still open at the second pulse");
}

SpinorState evolve_to_second_pulse(const WaveFunction& psi, const SequenceSpec& spec,
                                   RamseyDiagnostics& diag) {
    validate(spec);
    const Grid grid = psi.grid;
    const PotentialSource src = make_source(spec.field, grid);

    WaveFunction prepared = psi;
    if (spec.t1 > spec.t0) {
        EvolutionSpec prep;
        prep.t_start = spec.t0;
        prep.t_end = spec.t1;
        prep.dt = spec.dt;
        evolve(
            prepared,
            [&](double t, std::vector<double>& row) {
                spec.field.fill_row(Spin::Down, t, grid, row);
            },
            prep);
    }

    SpinorState s = pulse(spin_down_state(prepared), 0.5 * kPi, spec.phi1);

    EvolutionSpec main;
    main.t_start = spec.t1;
    main.t_end = spec.t2;
    main.dt = spec.dt;
    main.checkpoint_stride = spec.checkpoint_stride;
    double leak_up = 0.0, leak_down = 0.0;
    if (spec.checkpoint_stride > 0)
        main.checkpoint = [&](double t, const SpinorState& st) {
            const double xc = spec.field.center(t);
            const double pu = st.population(Spin::Up);
            const double pd = st.population(Spin::Down);
            if (pu > 1e-12)
                leak_up = std::max(leak_up,
                                   probability_outside(st.up, xc, spec.leak_radius) / pu);
            if (pd > 1e-12)
                leak_down = std::max(leak_down,
                                     probability_outside(st.down, xc, spec.leak_radius) / pd);
        };
    evolve_spinor(s, src, main);

    diag.leakage_up = leak_up;
    diag.leakage_down = leak_down;
    diag.fringe = inner(s.up, s.down);
    diag.norm_drift =
        std::abs(s.population(Spin::Up) + s.population(Spin::Down) - 1.0);
    return s;
}

double readout(const SpinorState& at_t2, double phi2) {
    const SpinorState projected = pulse(at_t2, 0.5 * kPi, phi2);
    return projected.population(Spin::Down) - projected.population(Spin::Up);
}

RamseyResult run_sequence(const WaveFunction& psi, const SequenceSpec& spec) {
    RamseyResult res;
    const SpinorState s = evolve_to_second_pulse(psi, spec, res.diag);
    res.w = readout(s, spec.phi2);
    return res;
}

double nominal_hold(const PotentialModel& model, double base_depth, double peak_up,
                    double peak_down, double t_ramp) {
    const double domega_peak = model.omega(peak_up) - model.omega(peak_down);
    if (domega_peak <= 0.0)
        throw ConfigError("nominal_hold: needs peak_up deeper than peak_down");

    // Simpson over one ramp; the closing ramp mirrors it exactly.
    const DepthSchedule ramp(base_depth, peak_up, peak_down, 0.0, t_ramp, 0.0);
    const int panels = 1024;
    const double h = t_ramp / panels;
    auto domega = [&](double t) {
        return model.omega(ramp.depth(Spin::Up, t)) - model.omega(ramp.depth(Spin::Down, t));
    };
    double sum = domega(0.0) + domega(t_ramp);
    for (int i = 1; i < panels; ++i) sum += (i % 2 ? 4.0 : 2.0) * domega(i * h);
    const double ramp_phase = sum * h / 3.0;

    const double hold = (kPi - 2.0 * ramp_phase) / domega_peak;
    if (hold < 0.0)
        throw ConfigError("nominal_hold: ramp phase alone exceeds pi; shorten the ramps");
    return hold;
}

SequenceTemplate make_template(const PotentialModel& model, const UnitSystem& units,
                               const Grid& grid, double base_depth, double peak_up,
                               double peak_down, const TemplateOptions& opt) {
    if (base_depth <= 0.0) throw ConfigError("make_template: base depth must be positive");
    if (opt.steps_per_period < 200)
        throw ConfigError("make_template: need at least 200 steps per trap period");

    SequenceTemplate tpl;
    tpl.model = model;
    tpl.t0 = 0.0;
    tpl.t1 = tpl.t0 + units.time_from_s(opt.t_prep_s);
    tpl.tW = tpl.t1 + units.time_from_s(opt.t_pulse_to_switch_s);
    tpl.t_switch = units.time_from_s(opt.t_switch_s);

    const double window_start = tpl.tW + tpl.t_switch + units.time_from_s(opt.t_settle_s);
    const double t_ramp = units.time_from_s(opt.t_ramp_s);
    const double hold = opt.t_hold >= 0.0
                            ? opt.t_hold
                            : nominal_hold(model, base_depth, peak_up, peak_down, t_ramp);
    tpl.schedule =
        make_parity_schedule(base_depth, peak_up, peak_down, t_ramp, hold, window_start);
    tpl.t2 = tpl.schedule.window_end() + units.time_from_s(opt.t_post_s);
    tpl.td = tpl.t2 + units.time_from_s(opt.t_detect_s);

    tpl.phi1 = 0.0;
    tpl.dt = 2.0 * kPi / model.omega(base_depth) / opt.steps_per_period;
    tpl.leak_radius = opt.leak_radius;
    tpl.checkpoint_stride = opt.checkpoint_stride;
    tpl.scales = make_scales(model.omega(base_depth));
    tpl.phi0_window_points = opt.phi0_window_points;
    tpl.phi0 = phi0_integral(model, tpl.schedule, grid, opt.phi0_window_points);
    return tpl;
}

SequenceTemplate with_hold_time(const SequenceTemplate& tpl, double t_hold,
                                const Grid& grid) {
    SequenceTemplate out = tpl;
    out.schedule = tpl.schedule.with_hold(t_hold);
    const double shift = out.schedule.window_end() - tpl.schedule.window_end();
    out.t2 = tpl.t2 + shift;
    out.td = tpl.td + shift;
    out.phi0 = phi0_integral(out.model, out.schedule, grid, out.phi0_window_points);
    return out;
}

SequenceSpec instantiate(const SequenceTemplate& tpl, double x_over_dx0,
                         double p_over_dp0) {
    SequenceSpec spec{
        TrapField{tpl.model, tpl.schedule,
                  make_displacement_trajectory(x_over_dx0 * tpl.scales.dx0,
                                               p_over_dp0 * tpl.scales.dp0, tpl.tW,
                                               tpl.t_switch)}};
    spec.t0 = tpl.t0;
    spec.t1 = tpl.t1;
    spec.t2 = tpl.t2;
    spec.td = tpl.td;
    spec.phi1 = tpl.phi1;
    spec.phi2 = tpl.phi1 - tpl.phi0 + kPi;
    spec.dt = tpl.dt;
    spec.leak_radius = tpl.leak_radius;
    spec.checkpoint_stride = tpl.checkpoint_stride;
    spec.displace_before_first_pulse = tpl.displace_before_first_pulse;
    return spec;
}

RamseyResult measure_point(const WaveFunction& psi, double x_over_dx0, double p_over_dp0,
                           const SequenceTemplate& tpl) {
    return run_sequence(psi, instantiate(tpl, x_over_dx0, p_over_dp0));
}

double measure_wigner_point(const WaveFunction& psi, double x_over_dx0,
                            double p_over_dp0, const SequenceTemplate& tpl) {
    const RamseyResult res = measure_point(psi, x_over_dx0, p_over_dp0, tpl);
    if (std::abs(res.w) > 1.0 + 1e-6)
        throw NumericalError("measure_wigner_point: |C| = " + std::to_string(std::abs(res.w)) +
                             " violates the contrast bound");
    return res.w;
}

double measure_ensemble(const std::vector<WaveFunction>& states,
                        const std::vector<double>& weights, double x_over_dx0,
                        double p_over_dp0, const SequenceTemplate& tpl) {
    if (states.size() != weights.size() || states.empty())
        throw ConfigError("measure_ensemble: need matching nonempty states and weights");
    double total = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw ConfigError("measure_ensemble: negative weight");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-6)
        throw ConfigError("measure_ensemble: weights sum to " + std::to_string(total));

    double c = 0.0;
    for (size_t k = 0; k < states.size(); ++k)
        if (weights[k] > 0.0)
            c += weights[k] * measure_wigner_point(states[k], x_over_dx0, p_over_dp0, tpl);
    return c;
}

ScanResult scan_wigner(const WaveFunction& psi, const std::vector<double>& x_over_dx0,
                       const std::vector<double>& p_over_dp0, const SequenceTemplate& tpl,
                       int jobs) {
    const int nx = static_cast<int>(x_over_dx0.size());
    const int np = static_cast<int>(p_over_dp0.size());
    if (nx == 0 || np == 0) throw ConfigError("scan_wigner: empty probe axes");

    ScanResult out;
    out.grid.x = x_over_dx0;
    out.grid.p = p_over_dp0;
    out.grid.scales = tpl.scales;
    out.grid.c.assign(static_cast<size_t>(nx) * np,
                      std::numeric_limits<double>::quiet_NaN());

    std::vector<double> leak(static_cast<size_t>(nx) * np, 0.0);
    std::mutex err_mutex;
    parallel_for(nx * np, jobs, [&](int idx) {
        const int ix = idx / np;
        const int ip = idx % np;
        try {
            const RamseyResult r = measure_point(psi, x_over_dx0[ix], p_over_dp0[ip], tpl);
            if (std::abs(r.w) > 1.0 + 1e-6)
                throw NumericalError("contrast bound violated: |C| = " +
                                     std::to_string(std::abs(r.w)));
            out.grid.c[idx] = r.w;
            leak[idx] = r.diag.leakage();
        } catch (const std::exception& e) {
            std::lock_guard<std::mutex> hold(err_mutex);
            out.errors.push_back({ix, ip, e.what()});
        }
    });

    std::sort(out.errors.begin(), out.errors.end(),
              [](const ScanPointError& a, const ScanPointError& b) {
                  return a.ix != b.ix ? a.ix < b.ix : a.ip < b.ip;
              });
    for (double l : leak) out.max_leakage = std::max(out.max_leakage, l);
    if (out.errors.empty()) validate(out.grid);
    return out;
}

std::vector<ParityPoint> parity_scan(int n_max, const SequenceTemplate& tpl,
                                     const Grid& grid) {
    if (n_max < 0) throw ConfigError("parity_scan: n_max must be >= 0");
    const EigenBasis basis =
        stationary_states(tpl.model, tpl.schedule.base(), grid, n_max + 1);
    std::vector<ParityPoint> out;
    out.reserve(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        const RamseyResult r = measure_point(basis.states[n], 0.0, 0.0, tpl);
        out.push_back({n, r.w, r.diag.leakage()});
    }
    return out;
}

}  // namespace wigsim
