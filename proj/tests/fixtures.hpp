#pragma once

#include "wigsim/eigensolver.hpp"
#include "wigsim/potentials.hpp"
#include "wigsim/ramsey.hpp"
#include "wigsim/units.hpp"

namespace wigsim::testfix {

// Shared protocol setup: cesium in an 18 uK trap probed at the maximum
// spin imbalance 27/22 uK.  Built once per binary on first use.
struct Fixture {
    UnitSystem units = cesium_units();
    Grid grid{512, 2.0 * 3.14159265358979323846};
    double base = 0.0, up = 0.0, down = 0.0;
    SequenceTemplate tpl;
    EigenBasis basis;  // lowest 10 trap states
};

inline Fixture build_fixture(const PotentialModel& model, TemplateOptions opt) {
    Fixture f;
    f.base = f.units.energy_from_uK(18.0);
    f.up = f.units.energy_from_uK(27.0);
    f.down = f.units.energy_from_uK(22.0);
    f.tpl = make_template(model, f.units, f.grid, f.base, f.up, f.down, opt);
    f.basis = stationary_states(model, f.base, f.grid, 10);
    return f;
}

inline const Fixture& lattice_fix() {
    static const Fixture f = build_fixture(PotentialModel::lattice(), {});
    return f;
}

inline const Fixture& harmonic_fix() {
    static const Fixture f = [] {
        TemplateOptions opt;
        opt.phi0_window_points = 128;
        const double base = cesium_units().energy_from_uK(18.0);
        return build_fixture(PotentialModel::harmonic_of_lattice(base), opt);
    }();
    return f;
}

}  // namespace wigsim::testfix
