#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "wigsim/eigensolver.hpp"
#include "wigsim/errors.hpp"
#include "wigsim/grid.hpp"
#include "wigsim/units.hpp"
#include "wigsim/wavefunction.hpp"

using namespace wigsim;

namespace {

constexpr double kPi = std::numbers::pi;

Grid default_grid() { return Grid(1024, 2.0 * kPi); }

WaveFunction analytic_fock(const Grid& g, double omega, int n) {
    WaveFunction psi(g);
    for (int i = 0; i < g.n(); ++i)
        psi.amp[i] = oracle::hermite_gauss(n, omega, g.x(i));
    normalize(psi);
    return psi;
}

}  // namespace

TEST_SUITE("core") {

TEST_CASE("unit system: cesium scales and round trips") {
    UnitSystem u = cesium_units();
    // Recoil energy of the 866 nm lattice light on Cs-133 is about 96 nK.
    CHECK(u.recoil_energy_J() / si::k_boltzmann ==
          doctest::Approx(9.6e-8).epsilon(0.01));
    CHECK(u.energy_from_recoils(1.0) == doctest::Approx(0.5));

    // 18 uK is roughly 190 recoil energies (the reference lattice depth).
    const double depth = u.energy_from_uK(18.0);
    CHECK(u.recoils_from_energy(depth) == doctest::Approx(187.5).epsilon(0.02));

    // Trap period of the 18 uK lattice is about 18 us.
    const double omega = std::sqrt(2.0 * depth);
    CHECK(u.s_from_time(2.0 * kPi / omega) == doctest::Approx(18.2e-6).epsilon(0.01));

    for (double v : {1.0, 0.37, 42.0}) {
        CHECK(u.length_from_m(u.m_from_length(v)) == doctest::Approx(v).epsilon(1e-12));
        CHECK(u.time_from_s(u.s_from_time(v)) == doctest::Approx(v).epsilon(1e-12));
        CHECK(u.energy_from_J(u.J_from_energy(v)) == doctest::Approx(v).epsilon(1e-12));
        CHECK(u.energy_from_uK(u.uK_from_energy(v)) == doctest::Approx(v).epsilon(1e-12));
    }
}

TEST_CASE("grid: symmetric samples, reflection map, wrap") {
    Grid g(256, 4.0);
    CHECK(g.dx() == doctest::Approx(8.0 / 256));
    CHECK(g.x(128) == 0.0);
    CHECK(g.x(0) == -4.0);
    for (int i : {0, 1, 7, 128, 200, 255})
        CHECK(g.wrap(g.x(g.reflect(i)) + g.x(i)) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(g.p(0) == 0.0);
    CHECK(g.p(1) == doctest::Approx(2.0 * kPi / 8.0));
    CHECK(g.p(255) == doctest::Approx(-2.0 * kPi / 8.0));

    CHECK_THROWS_AS(Grid(1000, 4.0), ConfigError);
    CHECK_THROWS_AS(Grid(256, -1.0), ConfigError);
}

TEST_CASE("transform: Gaussian maps to Gaussian of conjugate width") {
    Grid g = default_grid();
    const double sigma = 0.3;
    WaveFunction psi(g);
    for (int i = 0; i < g.n(); ++i)
        psi.amp[i] = std::exp(-g.x(i) * g.x(i) / (4.0 * sigma * sigma));
    normalize(psi);
    CHECK(position_variance(psi) == doctest::Approx(sigma * sigma).epsilon(1e-10));

    WaveFunction mom = transform(psi);
    CHECK(norm(mom) == doctest::Approx(1.0).epsilon(1e-12));
    // rms momentum width = 1/(2 sigma)
    double var = 0.0;
    for (int i = 0; i < g.n(); ++i) var += g.p(i) * g.p(i) * std::norm(mom.amp[i]);
    var *= g.dp();
    CHECK(var == doctest::Approx(1.0 / (4.0 * sigma * sigma)).epsilon(1e-10));
}

TEST_CASE("transform: plane wave peaks in a single momentum bin") {
    Grid g(512, 2.0 * kPi);
    const double p0 = 5.0 * g.dp();
    WaveFunction psi(g);
    for (int i = 0; i < g.n(); ++i) {
        const double ph = p0 * g.x(i);
        psi.amp[i] = cplx(std::cos(ph), std::sin(ph));
    }
    normalize(psi);
    WaveFunction mom = transform(psi);
    double peak = std::norm(mom.amp[5]) * g.dp();
    CHECK(peak == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("transform: round trip is the identity, norm preserved") {
    Grid g(128, 3.0);
    WaveFunction psi(g);
    for (int i = 0; i < g.n(); ++i)
        psi.amp[i] = cplx(std::sin(0.1 * i) + 0.2, 0.3 * std::cos(0.37 * i));
    normalize(psi);
    WaveFunction back = transform(transform(psi));
    for (int i = 0; i < g.n(); ++i) {
        CHECK(std::abs(back.amp[i] - psi.amp[i]) < 1e-12);
    }
}

TEST_CASE("parity: even and odd analytic states") {
    Grid g = default_grid();
    const double omega = std::sqrt(2.0 * 95.0);
    WaveFunction even = analytic_fock(g, omega, 2);
    WaveFunction odd = analytic_fock(g, omega, 3);
    CHECK(parity_expectation(even) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(parity_expectation(odd) == doctest::Approx(-1.0).epsilon(1e-10));

    // Equal-weight superposition of adjacent parities has zero net parity.
    WaveFunction mix(g);
    for (int i = 0; i < g.n(); ++i)
        mix.amp[i] = (even.amp[i] + odd.amp[i]) / std::sqrt(2.0);
    normalize(mix);
    CHECK(parity_expectation(mix) == doctest::Approx(0.0).epsilon(1e-10));

    // Parity is an involution: reflecting twice restores the state.
    WaveFunction rr = reflected(reflected(mix));
    for (int i = 0; i < g.n(); ++i) CHECK(std::abs(rr.amp[i] - mix.amp[i]) == 0.0);
}

TEST_CASE("parity of displaced ground state follows the alternating Poisson sum") {
    Grid g = default_grid();
    const double omega = std::sqrt(2.0 * 95.0);
    GroundStateScales sc = make_scales(omega);
    WaveFunction ground = analytic_fock(g, omega, 0);

    // |alpha|^2 = 0.5 coherent state: parity = sum_n (-1)^n |<n|alpha>|^2.
    WaveFunction coh = displace_state(ground, std::sqrt(2.0) * sc.dx0, 0.0);
    const double expected_half = oracle::alternating_poisson(0.5);
    CHECK(expected_half == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(parity_expectation(coh) == doctest::Approx(expected_half).epsilon(1e-8));

    // Displacement by 2*dx0 gives |alpha|^2 = 1, parity e^{-2}.
    WaveFunction coh2 = displace_state(ground, 2.0 * sc.dx0, 0.0);
    CHECK(parity_expectation(coh2) ==
          doctest::Approx(oracle::alternating_poisson(1.0)).epsilon(1e-8));

    // Same displacement magnitude along p.
    WaveFunction cohp = displace_state(ground, 0.0, 2.0 * sc.dp0);
    CHECK(parity_expectation(cohp) ==
          doctest::Approx(oracle::alternating_poisson(1.0)).epsilon(1e-8));
}

TEST_CASE("displace_state: zero displacement, inverse pair, norm") {
    Grid g = default_grid();
    const double omega = std::sqrt(2.0 * 95.0);
    WaveFunction psi = analytic_fock(g, omega, 1);

    WaveFunction same = displace_state(psi, 0.0, 0.0);
    CHECK(fidelity(same, psi) == doctest::Approx(1.0).epsilon(1e-12));

    const double x0 = 0.31, p0 = 2.7;
    WaveFunction there = displace_state(psi, x0, p0);
    CHECK(norm(there) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(position_mean(there) == doctest::Approx(x0).epsilon(1e-9));
    CHECK(momentum_mean(there) == doctest::Approx(p0).epsilon(1e-9));

    WaveFunction back = displace_state(there, -x0, -p0);
    CHECK(fidelity(back, psi) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("displace_state: support truncation raises a domain error") {
    Grid g(256, 3.0);
    WaveFunction psi(g);
    for (int i = 0; i < g.n(); ++i)
        psi.amp[i] = std::exp(-g.x(i) * g.x(i));
    normalize(psi);
    CHECK_THROWS_AS(displace_state(psi, 2.9, 0.0), DomainError);
}

TEST_CASE("expectations: analytic Fock states of a harmonic well") {
    Grid g = default_grid();
    const double depth = 95.0;
    const double omega = std::sqrt(2.0 * depth);
    PotentialModel model = PotentialModel::harmonic_of_lattice(depth);
    std::vector<double> row;
    model.fill_row(depth, 0.0, g, row);

    for (int n : {0, 1, 3}) {
        WaveFunction psi = analytic_fock(g, omega, n);
        CHECK(position_mean(psi) == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(momentum_mean(psi) == doctest::Approx(0.0).epsilon(1e-12));
        const double e = energy_expectation(psi, row);
        const double expect = omega * (n + 0.5) - depth;
        CHECK(e == doctest::Approx(expect).epsilon(1e-4));
    }

    // Displaced ground state gains the classical displacement energy.
    GroundStateScales sc = make_scales(omega);
    WaveFunction ground = analytic_fock(g, omega, 0);
    WaveFunction disp = displace_state(ground, 2.0 * sc.dx0, 0.0);
    const double gained = energy_expectation(disp, row) - energy_expectation(ground, row);
    CHECK(gained == doctest::Approx(0.5 * omega * omega * 4.0 * sc.dx0 * sc.dx0)
                         .epsilon(1e-6));
}

TEST_CASE("ground-state scales: exact minimum uncertainty product") {
    for (double omega : {1.0, 13.78, 137.0}) {
        GroundStateScales sc = make_scales(omega);
        CHECK(sc.dx0 * sc.dp0 == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(sc.dx0 == doctest::Approx(std::sqrt(0.5 / omega)).epsilon(1e-14));
    }
}

TEST_CASE("stationary_states: harmonic spectrum and analytic eigenfunctions") {
    Grid g = default_grid();
    const double depth = 95.0;
    PotentialModel model = PotentialModel::harmonic_of_lattice(depth);
    const double omega = model.omega(depth);
    const int k = 10;
    EigenBasis basis = stationary_states(model, depth, g, k);

    for (int n = 0; n + 1 < k; ++n) {
        const double gap = basis.energies[n + 1] - basis.energies[n];
        CHECK(gap == doctest::Approx(omega).epsilon(1e-6));
    }
    CHECK(basis.energies[0] == doctest::Approx(0.5 * omega - depth).epsilon(1e-9));

    for (int n = 0; n < k; ++n) {
        WaveFunction ref = analytic_fock(g, omega, n);
        CHECK(fidelity(basis.states[n], ref) == doctest::Approx(1.0).epsilon(1e-10));
        const double par = parity_expectation(basis.states[n]);
        CHECK(par == doctest::Approx(n % 2 == 0 ? 1.0 : -1.0).epsilon(1e-8));
    }

    // Orthonormality across the returned set.
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            const double want = a == b ? 1.0 : 0.0;
            CHECK(std::abs(inner(basis.states[a], basis.states[b]) - want) < 1e-8);
        }
}

TEST_CASE("stationary_states: lattice Wannier states at 190 recoils") {
    Grid g = default_grid();
    const double depth = 95.0;  // 190 E_rec
    PotentialModel model = PotentialModel::lattice();
    const double omega = model.omega(depth);
    EigenBasis basis = stationary_states(model, depth, g, 7);
    CHECK(basis.window_points == 256);

    // Lowest gap: hbar*omega - E_rec (first-order anharmonic correction).
    const double gap = basis.energies[1] - basis.energies[0];
    CHECK(std::abs(gap - (omega - 0.5)) < 5e-3 * omega);

    // Eigenpair residuals against the diagonalized window Hamiltonian.
    for (int n = 0; n < 7; ++n) {
        CHECK(eigen_residual(model, depth, g, basis.states[n], basis.energies[n],
                             basis.window_points) < 1e-8);
    }

    // Definite parity: exact for the bound bands up to the tunneling-tail
    // edge sample of the site window (n = 5 sits right at that scale).
    for (int n = 0; n <= 4; ++n)
        CHECK(std::abs(parity_expectation(basis.states[n]) - (n % 2 == 0 ? 1.0 : -1.0)) <
              1e-6);
    CHECK(std::abs(parity_expectation(basis.states[5]) - (-1.0)) < 1e-5);

    for (int a = 0; a < 7; ++a)
        for (int b = 0; b < 7; ++b) {
            const double want = a == b ? 1.0 : 0.0;
            CHECK(std::abs(inner(basis.states[a], basis.states[b]) - want) < 1e-8);
        }
}

TEST_CASE("stationary_states: grid refinement leaves low-lying energies unchanged") {
    const double depth = 95.0;
    PotentialModel model = PotentialModel::lattice();
    EigenBasis coarse = stationary_states(model, depth, Grid(512, 2.0 * kPi), 4);
    EigenBasis fine = stationary_states(model, depth, Grid(1024, 2.0 * kPi), 4);
    for (int n = 0; n < 4; ++n)
        CHECK(std::abs(coarse.energies[n] - fine.energies[n]) < 1e-6 * 0.5);
}

TEST_CASE("stationary_states: invalid requests") {
    Grid g = default_grid();
    PotentialModel model = PotentialModel::lattice();
    CHECK_THROWS_AS(stationary_states(model, 95.0, g, 0), ConfigError);
    CHECK_THROWS_AS(stationary_states(model, 95.0, g, 5, 3000), ConfigError);
    // Grid incommensurate with the lattice period.
    CHECK_THROWS_AS(stationary_states(model, 95.0, Grid(1024, 5.0), 3), ConfigError);
}

}  // TEST_SUITE
