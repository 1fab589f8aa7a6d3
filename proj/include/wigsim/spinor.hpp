#pragma once

#include "wigsim/potentials.hpp"
#include "wigsim/wavefunction.hpp"

namespace wigsim {

// Two-component motional state (up, down); total norm^2 = P_up + P_down = 1.
struct SpinorState {
    WaveFunction up;
    WaveFunction down;

    explicit SpinorState(const Grid& g) : up(g), down(g) {}
    SpinorState(WaveFunction u, WaveFunction d) : up(std::move(u)), down(std::move(d)) {}

    double population(Spin s) const {
        const WaveFunction& c = s == Spin::Up ? up : down;
        const double n = norm(c);
        return n * n;
    }
};

// Creates |down> tensor psi.
SpinorState spin_down_state(const WaveFunction& psi);

// Resonant rotation by angle theta about the axis set by phase phi:
//   up'   =  cos(theta/2) up   - i e^{+i phi} sin(theta/2) down
//   down' = -i e^{-i phi} sin(theta/2) up   + cos(theta/2) down
// Instantaneous (the motional state is untouched).
SpinorState pulse(const SpinorState& s, double theta, double phi);

}  // namespace wigsim
