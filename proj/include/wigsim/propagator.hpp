#pragma once

#include <functional>

#include "wigsim/potentials.hpp"
#include "wigsim/spinor.hpp"
#include "wigsim/wavefunction.hpp"

namespace wigsim {

// Supplies the potential row V(x_i) of one spin component at time t.
// fill(s, t, row) writes the row; signature(s, t) returns a value that is
// equal for two times iff the rows are equal, enabling phase-factor reuse
// across steps of static segments.
struct PotentialSource {
    std::function<void(Spin, double, std::vector<double>&)> fill;
    std::function<std::pair<double, double>(Spin, double)> signature;
};

PotentialSource make_source(const TrapField& field, const Grid& grid);
// Static single-component potential (tests, spectra checks).
PotentialSource make_static_source(std::vector<double> row_up,
                                   std::vector<double> row_down);

struct EvolutionSpec {
    double t_start = 0.0;
    double t_end = 0.0;
    double dt = 0.0;  // > 0; the final step is shortened to land on t_end
    // Invoked every checkpoint_stride steps (and at the final time) with the
    // current time; 0 disables.
    int checkpoint_stride = 0;
    std::function<void(double, const SpinorState&)> checkpoint;
};

// Second-order Strang splitting exp(-i V dt/2) exp(-i T dt) exp(-i V dt/2)
// in the lab frame, with V sampled at the step midpoint.  Unitary per step
// (norm preserved to rounding).
void evolve_spinor(SpinorState& s, const PotentialSource& src, const EvolutionSpec& spec);

// Single-component convenience wrapper.
void evolve(WaveFunction& psi, const std::function<void(double, std::vector<double>&)>& fill_row,
            const EvolutionSpec& spec);

// Galilei transform into the frame of a trap at position x_c moving with
// velocity v:  psi'(x) = psi(x + x_c) exp(-i v x)  (m = 1, hbar = 1; global
// phases dropped; applied identically to both spinor components they are
// common mode).
WaveFunction to_comoving(const WaveFunction& psi, double x_c, double v);
SpinorState to_comoving(const SpinorState& s, double x_c, double v);

// Probability outside |x - x_c| <= half_width, distances taken modulo the
// periodic domain.  The site-leakage monitor.
double probability_outside(const WaveFunction& psi, double x_c, double half_width);
double probability_outside(const SpinorState& s, double x_c, double half_width);

}  // namespace wigsim
