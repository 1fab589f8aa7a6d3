#include "wigsim/units.hpp"

#include <cmath>
#include <numbers>

#include "wigsim/errors.hpp"

namespace wigsim {

UnitSystem::UnitSystem(double mass_kg, double wavelength_m)
    : mass_kg_(mass_kg), wavelength_m_(wavelength_m) {
    if (!(mass_kg > 0.0) || !(wavelength_m > 0.0))
        throw ConfigError("UnitSystem: mass and wavelength must be positive");
    k_ = 2.0 * std::numbers::pi / wavelength_m_;
    energy_J_ = si::hbar * si::hbar * k_ * k_ / mass_kg_;
    time_s_ = si::hbar / energy_J_;
    momentum_si_ = si::hbar * k_;
}

double UnitSystem::energy_from_uK(double t_uK) const {
    return energy_from_J(t_uK * 1e-6 * si::k_boltzmann);
}

double UnitSystem::uK_from_energy(double e) const {
    return J_from_energy(e) / si::k_boltzmann * 1e6;
}

}  // namespace wigsim
