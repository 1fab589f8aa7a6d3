#pragma once

namespace wigsim {

// SI constants (CODATA 2018 / exact SI).
namespace si {
inline constexpr double hbar = 1.054571817e-34;       // J s
inline constexpr double k_boltzmann = 1.380649e-23;   // J/K (exact)
inline constexpr double atomic_mass_unit = 1.66053906660e-27;  // kg
inline constexpr double cs133_mass_amu = 132.905451931;
}  // namespace si

// Internal simulation units: hbar = 1, atom mass = 1, length unit = 1/k
// with k = 2*pi/lambda the trap-light wavenumber.  In these units the
// photon recoil energy hbar^2 k^2 / (2 m) equals exactly 1/2 and the
// lattice spatial period lambda/2 equals pi.
class UnitSystem {
public:
    UnitSystem(double mass_kg, double wavelength_m);

    double mass_kg() const { return mass_kg_; }
    double wavelength_m() const { return wavelength_m_; }
    double wavenumber_per_m() const { return k_; }

    // Scale factors: one internal unit expressed in SI.
    double length_m() const { return 1.0 / k_; }
    double energy_J() const { return energy_J_; }
    double time_s() const { return time_s_; }
    double momentum_si() const { return momentum_si_; }

    double recoil_energy_J() const { return 0.5 * energy_J_; }

    // SI -> internal
    double length_from_m(double x_m) const { return x_m * k_; }
    double time_from_s(double t_s) const { return t_s / time_s_; }
    double energy_from_J(double e_J) const { return e_J / energy_J_; }
    double energy_from_uK(double t_uK) const;
    double energy_from_recoils(double e_rec) const { return 0.5 * e_rec; }
    double momentum_from_si(double p) const { return p / momentum_si_; }

    // internal -> SI
    double m_from_length(double x) const { return x / k_; }
    double s_from_time(double t) const { return t * time_s_; }
    double J_from_energy(double e) const { return e * energy_J_; }
    double uK_from_energy(double e) const;
    double recoils_from_energy(double e) const { return 2.0 * e; }

private:
    double mass_kg_;
    double wavelength_m_;
    double k_;
    double energy_J_;
    double time_s_;
    double momentum_si_;
};

inline UnitSystem cesium_units(double wavelength_m = 866e-9) {
    return UnitSystem(si::cs133_mass_amu * si::atomic_mass_unit, wavelength_m);
}

}  // namespace wigsim
