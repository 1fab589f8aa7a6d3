#include "wigsim/spinor.hpp"

#include <cmath>

namespace wigsim {

SpinorState spin_down_state(const WaveFunction& psi) {
    WaveFunction up(psi.grid, psi.space);
    return SpinorState(std::move(up), psi);
}

SpinorState pulse(const SpinorState& s, double theta, double phi) {
    const double c = std::cos(0.5 * theta);
    const double sn = std::sin(0.5 * theta);
    const cplx a = cplx(0.0, -1.0) * cplx(std::cos(phi), std::sin(phi)) * sn;
    const cplx b = cplx(0.0, -1.0) * cplx(std::cos(phi), -std::sin(phi)) * sn;
    SpinorState out = s;
    for (int i = 0; i < s.up.grid.n(); ++i) {
        const cplx u = s.up.amp[i];
        const cplx d = s.down.amp[i];
        out.up.amp[i] = c * u + a * d;
        out.down.amp[i] = b * u + c * d;
    }
    return out;
}

}  // namespace wigsim
