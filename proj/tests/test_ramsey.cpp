#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "wigsim/eigensolver.hpp"
#include "wigsim/errors.hpp"
#include "wigsim/ramsey.hpp"
#include "wigsim/units.hpp"
#include "wigsim/wavefunction.hpp"
#include "wigsim/wigner.hpp"

using namespace wigsim;
using testfix::Fixture;
using testfix::harmonic_fix;
using testfix::lattice_fix;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_SUITE("ramsey") {

TEST_CASE("sequence validation rejects inconsistent programs") {
    const Fixture& f = lattice_fix();
    const SequenceSpec good = instantiate(f.tpl, 1.0, 0.5);
    CHECK_NOTHROW(validate(good));

    SequenceSpec s = good;
    s.dt = 0.0;
    CHECK_THROWS_AS(validate(s), ConfigError);

    s = good;
    s.t2 = s.t1 - 1.0;
    CHECK_THROWS_AS(validate(s), ConfigError);

    // Switch after the window opened.
    s = good;
    s.field.trajectory = make_displacement_trajectory(
        0.1, 0.0, s.field.schedule.window_start() + 0.1, f.tpl.t_switch);
    CHECK_THROWS_AS(validate(s), ConfigError);

    // Window still open at the second pulse.
    s = good;
    s.field.schedule = s.field.schedule.with_hold(10.0 * s.field.schedule.t_hold());
    CHECK_THROWS_AS(validate(s), ConfigError);

    // Window opening before the first pulse.
    s = good;
    s.field.schedule = s.field.schedule.with_window_start(0.5 * s.t1);
    CHECK_THROWS_AS(validate(s), ConfigError);

    // Displacement-first ordering needs the matching flag.
    s = good;
    s.field.trajectory =
        make_displacement_trajectory(0.1, 0.0, 0.5 * s.t1, f.tpl.t_switch);
    CHECK_THROWS_AS(validate(s), ConfigError);
    s.displace_before_first_pulse = true;
    CHECK_NOTHROW(validate(s));
}

TEST_CASE("ground state at the origin: w = +1, fringe peaks at zero offset") {
    const Fixture& f = harmonic_fix();
    const SequenceSpec spec = instantiate(f.tpl, 0.0, 0.0);

    RamseyDiagnostics diag;
    const SpinorState at_t2 = evolve_to_second_pulse(f.basis.states[0], spec, diag);
    CHECK(diag.norm_drift < 1e-10);
    CHECK(diag.leakage() < 1e-8);

    const double w = readout(at_t2, spec.phi2);
    CHECK(w == doctest::Approx(1.0).epsilon(1e-3));

    // The fringe is exactly first-harmonic in the readout phase.
    for (double phi : {0.3, 1.7, -2.2}) {
        const double expected =
            -2.0 * std::imag(std::exp(cplx(0.0, phi)) * diag.fringe);
        CHECK(readout(at_t2, phi) == doctest::Approx(expected).epsilon(1e-12));
    }

    // Scan the second-pulse phase: the maximum sits at the compensated value.
    double best_offset = -kPi, best_w = -2.0;
    for (double d = -kPi; d < kPi; d += 2e-3) {
        const double v = readout(at_t2, spec.phi2 + d);
        if (v > best_w) {
            best_w = v;
            best_offset = d;
        }
    }
    CHECK(std::abs(best_offset) < 1e-2);
}

TEST_CASE("w is invariant under a global phase of the input") {
    const Fixture& f = harmonic_fix();
    const SequenceSpec spec = instantiate(f.tpl, 0.0, 0.0);

    WaveFunction rotated = f.basis.states[1];
    for (auto& a : rotated.amp) a *= std::polar(1.0, 0.83);
    const RamseyResult plain = run_sequence(f.basis.states[1], spec);
    const RamseyResult spun = run_sequence(rotated, spec);
    CHECK(plain.w == doctest::Approx(spun.w).epsilon(1e-12));
}

TEST_CASE("leakage monitor is diagnostic only") {
    const Fixture& f = harmonic_fix();
    SequenceSpec spec = instantiate(f.tpl, 0.0, 0.0);
    const RamseyResult with_monitor = run_sequence(f.basis.states[0], spec);
    spec.checkpoint_stride = 0;
    const RamseyResult without = run_sequence(f.basis.states[0], spec);
    CHECK(without.w == with_monitor.w);
    CHECK(without.diag.leakage() == 0.0);
}

TEST_CASE("harmonic parity scan: |w - (-1)^n| < 1e-3 through n = 9") {
    const Fixture& f = harmonic_fix();
    const auto scan = parity_scan(9, f.tpl, f.grid);
    REQUIRE(scan.size() == 10);
    for (const auto& point : scan) {
        const double target = point.n % 2 == 0 ? 1.0 : -1.0;
        CHECK_MESSAGE(std::abs(point.w - target) < 1e-3, "n = ", point.n, " w = ", point.w);
    }
}

TEST_CASE("lattice parity scan: faithful through n = 5, degraded by n = 8") {
    const Fixture& f = lattice_fix();
    const auto scan = parity_scan(9, f.tpl, f.grid);
    REQUIRE(scan.size() == 10);

    for (int n = 0; n <= 5; ++n) {
        const double target = n % 2 == 0 ? 1.0 : -1.0;
        CHECK_MESSAGE(std::abs(scan[n].w - target) < 0.05, "n = ", n, " w = ", scan[n].w);
    }
    CHECK(std::abs(scan[0].w - 1.0) < 1e-3);
    CHECK(std::abs(scan[1].w + 1.0) < 1e-2);

    // Bands at and above the barrier tunnel out of the site within the
    // sequence; the monitor reports order-unity occupation outside it.
    for (int n : {8, 9}) {
        CHECK_MESSAGE(scan[n].leakage > 0.1, "n = ", n, " leakage = ", scan[n].leakage);
    }
    CHECK(scan[8].leakage > 10.0 * scan[0].leakage);
}

TEST_CASE("trap-displaced ground state probed at its own point reads +1") {
    const Fixture& f = lattice_fix();
    const double x = 1.5, p = -1.0;
    const WaveFunction displaced = displace_state(
        f.basis.states[0], x * f.tpl.scales.dx0, p * f.tpl.scales.dp0);

    // The state is born comoving: the trap catches it at t0, before the
    // pulse, so it never rotates in the static trap.
    SequenceSpec spec = instantiate(f.tpl, x, p);
    spec.displace_before_first_pulse = true;
    spec.field.trajectory = make_displacement_trajectory(
        x * f.tpl.scales.dx0, p * f.tpl.scales.dp0, spec.t0, f.tpl.t_switch);

    const RamseyResult res = run_sequence(displaced, spec);
    CHECK(res.w == doctest::Approx(1.0).epsilon(2e-2));
}

TEST_CASE("displacement before or after the first pulse gives the same w") {
    const Fixture& f = lattice_fix();
    const double x = 1.0, p = 0.5;

    // Identical trap history; only the pulse crosses the switch.  Both spin
    // potentials agree outside the window, so the pulse commutes through.
    // The residual difference is step-boundary misalignment, O(dt^2).
    SequenceSpec after = instantiate(f.tpl, x, p);
    after.dt = f.tpl.dt / 3.0;
    SequenceSpec before = after;
    before.displace_before_first_pulse = true;
    before.t1 = 0.5 * (f.tpl.tW + f.tpl.t_switch +
                       f.tpl.schedule.window_start());

    const RamseyResult a = run_sequence(f.basis.states[1], after);
    const RamseyResult b = run_sequence(f.basis.states[1], before);
    CHECK(a.w == doctest::Approx(b.w).epsilon(1e-6));
}

TEST_CASE("ensemble contrast is the population-weighted pure-state sum") {
    const Fixture& f = lattice_fix();
    const std::vector<WaveFunction> states{f.basis.states[0], f.basis.states[1]};
    const std::vector<double> weights{0.7, 0.3};
    const double x = 0.8, p = -0.6;

    const double mixed = measure_ensemble(states, weights, x, p, f.tpl);
    const double direct = 0.7 * measure_wigner_point(states[0], x, p, f.tpl) +
                          0.3 * measure_wigner_point(states[1], x, p, f.tpl);
    CHECK(mixed == doctest::Approx(direct).epsilon(1e-6));

    CHECK_THROWS_AS(measure_ensemble(states, {0.7, 0.2}, x, p, f.tpl), ConfigError);
    CHECK_THROWS_AS(measure_ensemble(states, {1.3, -0.3}, x, p, f.tpl), ConfigError);
}

TEST_CASE("wigner scan matches the oracle and is parallelism-independent") {
    const Fixture& f = lattice_fix();
    const WaveFunction& fock1 = f.basis.states[1];
    const std::vector<double> xs{-2.0, -1.0, 0.0, 1.0, 2.0};
    const std::vector<double> ps{-1.2, 0.0, 1.2};

    const ScanResult serial = scan_wigner(fock1, xs, ps, f.tpl, 1);
    CHECK(serial.errors.empty());
    CHECK(serial.max_leakage < 0.1);

    const OracleResult oracle = wigner_transform(fock1, xs, ps, f.tpl.scales);
    const GridDiff diff = compare(oracle.grid, serial.grid);
    CHECK(diff.max_abs < 0.05);
    CHECK(serial.grid.at(2, 1) < -0.8);  // central value of an odd state

    const ScanResult threaded = scan_wigner(fock1, xs, ps, f.tpl, 4);
    CHECK(threaded.errors.empty());
    REQUIRE(threaded.grid.c.size() == serial.grid.c.size());
    for (size_t i = 0; i < serial.grid.c.size(); ++i)
        CHECK(threaded.grid.c[i] == serial.grid.c[i]);
}

TEST_CASE("contrast bound violations are reported") {
    const Fixture& f = harmonic_fix();
    WaveFunction heavy = f.basis.states[0];
    for (auto& a : heavy.amp) a *= 1.2;
    CHECK_THROWS_AS(measure_wigner_point(heavy, 0.0, 0.0, f.tpl), NumericalError);
}

TEST_CASE("nominal hold closes the differential phase at pi") {
    const Fixture& f = lattice_fix();
    const PotentialModel model = PotentialModel::lattice();
    const double t_ramp = f.units.time_from_s(15e-6);
    const double hold = nominal_hold(model, f.base, f.up, f.down, t_ramp);
    CHECK(hold > 0.0);

    // Independent fine-grained trapezoid over the whole window.
    const DepthSchedule sched =
        make_parity_schedule(f.base, f.up, f.down, t_ramp, hold, 0.0);
    const int n = 200000;
    const double h = sched.window_end() / n;
    double phase = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double t = i * h;
        const double d = model.omega(sched.depth(Spin::Up, t)) -
                         model.omega(sched.depth(Spin::Down, t));
        phase += (i == 0 || i == n ? 0.5 : 1.0) * d * h;
    }
    CHECK(phase == doctest::Approx(kPi).epsilon(1e-6));

    CHECK_THROWS_AS(nominal_hold(model, f.base, f.down, f.up, t_ramp), ConfigError);
}

}  // TEST_SUITE
