#pragma once

#include <vector>

#include "wigsim/grid.hpp"

namespace wigsim {

enum class Spin { Up, Down };

// Trap shapes, all written as attractive wells of instantaneous depth U > 0
// with minimum value -U at the trap centre (internal units, k = 1):
//   lattice:   V(x) = -U cos^2(x)
//   tweezer:   V(x) = -U exp(-2 x^2 / w^2)
//   harmonic:  V(x) = -U + 1/2 omega(U)^2 x^2
// The harmonic frequency scales as omega(U) = omega_ref * sqrt(U/U_ref),
// matching the depth scaling of both real trap shapes.
class PotentialModel {
public:
    enum class Kind { Lattice, Harmonic, Tweezer };

    static PotentialModel lattice();
    static PotentialModel harmonic(double omega_ref, double depth_ref);
    // Harmonic approximation of a lattice site at reference depth.
    static PotentialModel harmonic_of_lattice(double depth_ref);
    static PotentialModel tweezer(double waist);

    Kind kind() const { return kind_; }
    double waist() const { return waist_; }

    // Harmonic-approximation trap frequency at the given depth.
    double omega(double depth) const;

    double value(double depth, double x_rel) const;
    void fill_row(double depth, double x_center, const Grid& g,
                  std::vector<double>& out) const;

private:
    Kind kind_;
    double waist_ = 0.0;      // tweezer only
    double omega_ref_ = 0.0;  // harmonic only
    double depth_ref_ = 0.0;  // harmonic only
};

// E_n of a harmonic well referenced to the barrier top: omega*(n+1/2) - depth.
double harmonic_spectrum(double omega, double depth, int n);

// Perturbative single-site lattice spectrum,
//   E_n = omega*(n+1/2) - U - [2n(n+1)+1]/4 * E_rec,  omega = sqrt(2U).
// First-order in E_rec/(hbar*omega); warns below 25 internal units (50 E_rec).
double lattice_spectrum_perturbative(double depth, int n);

// Depth-independent anharmonic correction of a Gaussian tweezer,
//   3*[2n(n+1)+1]/(8 w^2),
// subtracted from the harmonic spectrum with omega = 2*sqrt(U)/w.
double tweezer_correction(double waist, int n);
double tweezer_spectrum_perturbative(double depth, double waist, int n);

// Spin-dependent depth program: both spins sit at a common base depth
// outside the parity window and follow raised-cosine ramps (duration t_ramp,
// C^1 at the boundaries) to their individual peak depths, hold for t_hold,
// then ramp back.  Depths are equal at both window edges by construction.
class DepthSchedule {
public:
    DepthSchedule(double base, double peak_up, double peak_down,
                  double window_start, double t_ramp, double t_hold);

    double depth(Spin s, double t) const;
    double base() const { return base_; }
    double peak(Spin s) const { return s == Spin::Up ? peak_up_ : peak_down_; }
    double window_start() const { return window_start_; }
    double window_end() const { return window_start_ + 2.0 * t_ramp_ + t_hold_; }
    double t_ramp() const { return t_ramp_; }
    double t_hold() const { return t_hold_; }

    DepthSchedule with_hold(double t_hold) const;
    DepthSchedule with_window_start(double t0) const;

private:
    double base_, peak_up_, peak_down_;
    double window_start_, t_ramp_, t_hold_;
};

DepthSchedule make_parity_schedule(double base, double peak_up, double peak_down,
                                   double t_ramp, double t_hold,
                                   double window_start = 0.0);

// Trap-centre trajectory probing the phase-space point (x, p): the centre
// follows a smoothstep from 0 to x over t_switch while the velocity rises
// smoothly to v = p (m = 1); afterwards the centre moves linearly with the
// exact asymptote x_c(t) = x + v*(t - t_on - t_switch/2).  t_switch = 0
// degenerates to a sudden shift.
class TrapTrajectory {
public:
    TrapTrajectory() = default;  // trap at rest at the origin
    TrapTrajectory(double x_target, double v_target, double t_on, double t_switch);

    double position(double t) const;
    double velocity(double t) const;
    double x_target() const { return x_; }
    double v_target() const { return v_; }
    double t_on() const { return t_on_; }
    double t_switch() const { return t_switch_; }
    bool is_static() const { return x_ == 0.0 && v_ == 0.0; }

private:
    double x_ = 0.0, v_ = 0.0, t_on_ = 0.0, t_switch_ = 0.0;
};

TrapTrajectory make_displacement_trajectory(double x, double p, double t_on,
                                            double t_switch);

// Full spin-dependent, time-dependent trap: shape + depth program + motion.
struct TrapField {
    PotentialModel model;
    DepthSchedule schedule;
    TrapTrajectory trajectory;

    double depth(Spin s, double t) const { return schedule.depth(s, t); }
    double center(double t) const { return trajectory.position(t); }
    void fill_row(Spin s, double t, const Grid& g, std::vector<double>& out) const {
        model.fill_row(schedule.depth(s, t), trajectory.position(t), g, out);
    }
};

}  // namespace wigsim
