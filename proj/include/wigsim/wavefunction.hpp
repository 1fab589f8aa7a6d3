#pragma once

#include <complex>
#include <vector>

#include "wigsim/grid.hpp"

namespace wigsim {

using cplx = std::complex<double>;

enum class Space { Position, Momentum };

// Single-component wavefunction sampled on a Grid.  Normalization
// convention: sum |psi_i|^2 * dx = 1 in position space and
// sum |phi_i|^2 * dp = 1 in momentum space (the transform is unitary).
struct WaveFunction {
    Grid grid;
    Space space = Space::Position;
    std::vector<cplx> amp;

    WaveFunction(const Grid& g, Space s = Space::Position)
        : grid(g), space(s), amp(g.n(), cplx(0.0, 0.0)) {}

    double step() const { return space == Space::Position ? grid.dx() : grid.dp(); }
};

double norm(const WaveFunction& psi);
void normalize(WaveFunction& psi);
cplx inner(const WaveFunction& a, const WaveFunction& b);
double fidelity(const WaveFunction& a, const WaveFunction& b);

// Unitary FFT between position and momentum representations.  A plane wave
// exp(i*p0*x) maps to a single-bin peak at p0 when p0 is a multiple of dp.
WaveFunction transform(const WaveFunction& psi);

// Re<psi|R|psi> with R the reflection about x = 0 (index map i -> (n-i) mod n).
// Equals the expectation value of the parity operator for normalized states.
double parity_expectation(const WaveFunction& psi);

WaveFunction reflected(const WaveFunction& psi);

// psi(x) -> psi(x - x0) * exp(i*p0*x): phase-space displacement by (x0, p0)
// up to a global phase.  The shift is spectral (band-limited, periodic
// wrap-around); if more than support_tol of the probability ends up in the
// outer 1/32 edge bands of the domain a DomainError is thrown.
WaveFunction displace_state(const WaveFunction& psi, double x0, double p0,
                            double support_tol = 1e-6);

// Spectral translation psi(x) -> psi(x + shift) for arbitrary real shift.
WaveFunction translated(const WaveFunction& psi, double shift);

double position_mean(const WaveFunction& psi);
double position_variance(const WaveFunction& psi);
double momentum_mean(const WaveFunction& psi);
double momentum_variance(const WaveFunction& psi);
double kinetic_energy(const WaveFunction& psi);
// <V> for a potential sampled on the position grid.
double potential_energy(const WaveFunction& psi, const std::vector<double>& v);
double energy_expectation(const WaveFunction& psi, const std::vector<double>& v);

// Ground-state length and momentum scales of a harmonic well of frequency
// omega (hbar = m = 1): dx0 = sqrt(1/(2*omega)), dp0 = 1/(2*dx0), so that
// dx0 * dp0 = 1/2 holds exactly.
struct GroundStateScales {
    double omega;
    double dx0;
    double dp0;
};

GroundStateScales make_scales(double omega);

}  // namespace wigsim
