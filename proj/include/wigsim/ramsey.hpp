#pragma once

#include <string>
#include <vector>

#include "wigsim/potentials.hpp"
#include "wigsim/spinor.hpp"
#include "wigsim/units.hpp"
#include "wigsim/wavefunction.hpp"
#include "wigsim/wigner.hpp"

namespace wigsim {

// One fully-timed interferometer run.  Times are absolute internal units.
// The displacement switch time and duration live in field.trajectory; the
// differential depth window lives in field.schedule and must open after the
// switch completes and close before the second pulse.
struct SequenceSpec {
    TrapField field;
    double t0 = 0.0;  // preparation
    double t1 = 0.0;  // first pi/2 pulse
    double t2 = 0.0;  // second pi/2 pulse
    double td = 0.0;  // detection; populations are conserved after t2
    double phi1 = 0.0;
    double phi2 = 0.0;
    double dt = 0.0;
    double leak_radius = 0.0;  // comoving |x - x_c| band of the leakage monitor
    int checkpoint_stride = 25;
    bool displace_before_first_pulse = false;
};

// ConfigError on inconsistent timing, window placement or trajectory.
void validate(const SequenceSpec& spec);

struct RamseyDiagnostics {
    double norm_drift = 0.0;    // |P_up + P_down - 1| at t2
    double leakage_up = 0.0;    // max over checkpoints, per unit component norm
    double leakage_down = 0.0;
    cplx fringe{0.0, 0.0};      // Z = <psi_up|psi_down> at t2, before the pulse

    double leakage() const { return leakage_up > leakage_down ? leakage_up : leakage_down; }
};

struct RamseyResult {
    double w = 0.0;  // P_down - P_up after the second pulse
    RamseyDiagnostics diag;
};

// |down> tensor psi through preparation, first pulse and the differential
// window; returns the spinor just before the second pulse.
SpinorState evolve_to_second_pulse(const WaveFunction& psi, const SequenceSpec& spec,
                                   RamseyDiagnostics& diag);

// Second pulse and projection.  The fringe is exactly first-harmonic:
// w(phi) = -2 Im[e^{i phi} Z] with Z the pre-pulse component overlap.
double readout(const SpinorState& at_t2, double phi2);

RamseyResult run_sequence(const WaveFunction& psi, const SequenceSpec& spec);

// Everything about a sequence except the probe point.  phi0 is the
// compensation phase; instantiate() sets phi2 = phi1 - phi0 + pi, which
// anchors the undisplaced motional ground state at w = +1.
struct SequenceTemplate {
    PotentialModel model = PotentialModel::lattice();
    DepthSchedule schedule{1.0, 1.0, 1.0, 0.0, 1.0, 0.0};
    double t0 = 0.0;
    double t1 = 0.0;
    double tW = 0.0;
    double t_switch = 0.0;
    double t2 = 0.0;
    double td = 0.0;
    double phi1 = 0.0;
    double phi0 = 0.0;
    double dt = 0.0;
    double leak_radius = 0.0;
    int checkpoint_stride = 25;
    bool displace_before_first_pulse = false;
    GroundStateScales scales{0.0, 0.0, 0.0};
    int phi0_window_points = 0;  // kept so the template can be retuned
};

// Protocol knobs.  Lab timings are SI; the hold time is internal (it is the
// calibrated quantity).  t_hold < 0 requests the nominal n*pi condition.
struct TemplateOptions {
    double t_prep_s = 1e-6;             // t0 -> first pulse
    double t_pulse_to_switch_s = 2e-7;  // first pulse -> displacement switch
    double t_switch_s = 3e-7;
    double t_settle_s = 5e-7;           // switch end -> window start
    double t_ramp_s = 15e-6;
    double t_post_s = 5e-7;             // window end -> second pulse
    double t_detect_s = 5e-7;           // second pulse -> detection
    double t_hold = -1.0;
    int steps_per_period = 500;
    int phi0_window_points = 0;         // 0: solver picks (single site / full grid)
    double leak_radius = 1.5707963267948966;  // half a lattice site
    int checkpoint_stride = 25;
};

// Hold time closing the integral of the differential harmonic frequency at
// pi: solves Int dt [omega_up(t) - omega_down(t)] = pi over ramps + hold.
// ConfigError when the ramps alone overshoot pi.
double nominal_hold(const PotentialModel& model, double base_depth, double peak_up,
                    double peak_down, double t_ramp);

// Standard timeline at the given depths; phi0 is evaluated on the grid by
// quadrature of the exact n = 0 differential eigenenergy.
SequenceTemplate make_template(const PotentialModel& model, const UnitSystem& units,
                               const Grid& grid, double base_depth, double peak_up,
                               double peak_down, const TemplateOptions& opt = {});

// Same timeline with a different hold time: window end, second pulse and
// detection shift together and phi0 is re-evaluated on the grid.
SequenceTemplate with_hold_time(const SequenceTemplate& tpl, double t_hold,
                                const Grid& grid);

// Probe-point realization: displacement trajectory to (x, p) in ground-state
// widths, phases filled from the template.
SequenceSpec instantiate(const SequenceTemplate& tpl, double x_over_dx0,
                         double p_over_dp0);

RamseyResult measure_point(const WaveFunction& psi, double x_over_dx0,
                           double p_over_dp0, const SequenceTemplate& tpl);

// C(x, p) = w.  |C| > 1 + 1e-6 -> NumericalError.
double measure_wigner_point(const WaveFunction& psi, double x_over_dx0,
                            double p_over_dp0, const SequenceTemplate& tpl);

// Incoherent ensemble: population-weighted sum of pure-state contrasts.
// Weights must be nonnegative and sum to 1 within 1e-6.
double measure_ensemble(const std::vector<WaveFunction>& states,
                        const std::vector<double>& weights, double x_over_dx0,
                        double p_over_dp0, const SequenceTemplate& tpl);

struct ScanPointError {
    int ix = 0;
    int ip = 0;
    std::string what;
};

struct ScanResult {
    WignerGrid grid;  // failed points hold NaN
    std::vector<ScanPointError> errors;
    double max_leakage = 0.0;
};

// Independent deterministic tasks, one per grid point, statically
// partitioned over jobs threads; per-point failures are recorded and the
// scan continues.
ScanResult scan_wigner(const WaveFunction& psi, const std::vector<double>& x_over_dx0,
                       const std::vector<double>& p_over_dp0,
                       const SequenceTemplate& tpl, int jobs = 1);

struct ParityPoint {
    int n = 0;
    double w = 0.0;
    double leakage = 0.0;
};

// w(n) for the lowest trap eigenstates probed at the origin.
std::vector<ParityPoint> parity_scan(int n_max, const SequenceTemplate& tpl,
                                     const Grid& grid);

}  // namespace wigsim
