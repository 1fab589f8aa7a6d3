#pragma once

#include <vector>

#include "wigsim/potentials.hpp"
#include "wigsim/wavefunction.hpp"

namespace wigsim {

struct EigenBasis {
    std::vector<double> energies;       // ascending
    std::vector<WaveFunction> states;   // embedded on the full grid, normalized
    int window_points = 0;              // diagonalization window size
};

// Lowest k bound states of a static trap, computed by dense diagonalization
// of the spectrally discretized Hamiltonian on a periodic window centred on
// the trap, then embedded (zero-padded) into the full grid.
//
// window_points = 0 picks the window automatically: one lattice period for
// the lattice (the single-site construction that yields Wannier-like
// states), the full grid otherwise.  The window must be grid-commensurate.
EigenBasis stationary_states(const PotentialModel& model, double depth,
                             const Grid& grid, int k, int window_points = 0);

// Basis used for Fock-state preparation, with a window wide enough for the
// requested band count.
EigenBasis fock_basis(const PotentialModel& model, double depth, const Grid& grid,
                      int k);

// ||H psi - E psi||_2 evaluated with the same window Hamiltonian that
// produced the pair.  Exposed so tests can verify eigenpairs directly.
double eigen_residual(const PotentialModel& model, double depth, const Grid& grid,
                      const WaveFunction& state, double energy, int window_points);

// Number of lattice-period samples of the grid (throws if incommensurate).
int lattice_site_points(const Grid& grid);

// Differential light shift of level n between the two spin potentials.
struct DifferentialShift {
    double exact;     // E_n(depth_up) - E_n(depth_down) from diagonalization
    double harmonic;  // n*(w_up - w_down) + dE0, dE0 = -dU + (w_up - w_down)/2
};

DifferentialShift differential_shift(const PotentialModel& model, double depth_up,
                                     double depth_down, int n, const Grid& grid,
                                     int window_points = 0);

// Phase offset Phi0 = integral of the exact n = 0 differential eigenenergy
// over the parity window (the depths are equal outside it, so nothing else
// contributes).  Evaluated by adaptive quadrature over the two ramps plus
// the constant hold segment.
double phi0_integral(const PotentialModel& model, const DepthSchedule& schedule,
                     const Grid& grid, int window_points = 0, double tol = 1e-6);

}  // namespace wigsim
