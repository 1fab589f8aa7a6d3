#include "wigsim/potentials.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "wigsim/errors.hpp"
#include "wigsim/log.hpp"

namespace wigsim {

PotentialModel PotentialModel::lattice() {
    PotentialModel m;
    m.kind_ = Kind::Lattice;
    return m;
}

PotentialModel PotentialModel::harmonic(double omega_ref, double depth_ref) {
    if (!(omega_ref > 0.0) || !(depth_ref > 0.0))
        throw ConfigError("PotentialModel::harmonic: omega_ref and depth_ref must be positive");
    PotentialModel m;
    m.kind_ = Kind::Harmonic;
    m.omega_ref_ = omega_ref;
    m.depth_ref_ = depth_ref;
    return m;
}

PotentialModel PotentialModel::harmonic_of_lattice(double depth_ref) {
    return harmonic(std::sqrt(2.0 * depth_ref), depth_ref);
}

PotentialModel PotentialModel::tweezer(double waist) {
    if (!(waist > 0.0)) throw ConfigError("PotentialModel::tweezer: waist must be positive");
    PotentialModel m;
    m.kind_ = Kind::Tweezer;
    m.waist_ = waist;
    return m;
}

double PotentialModel::omega(double depth) const {
    if (!(depth > 0.0)) throw ConfigError("PotentialModel::omega: depth must be positive");
    switch (kind_) {
        case Kind::Lattice:
            return std::sqrt(2.0 * depth);
        case Kind::Harmonic:
            return omega_ref_ * std::sqrt(depth / depth_ref_);
        case Kind::Tweezer:
            return 2.0 * std::sqrt(depth) / waist_;
    }
    return 0.0;
}

double PotentialModel::value(double depth, double x_rel) const {
    switch (kind_) {
        case Kind::Lattice: {
            const double c = std::cos(x_rel);
            return -depth * c * c;
        }
        case Kind::Harmonic: {
            const double w = omega(depth);
            return -depth + 0.5 * w * w * x_rel * x_rel;
        }
        case Kind::Tweezer:
            return -depth * std::exp(-2.0 * x_rel * x_rel / (waist_ * waist_));
    }
    return 0.0;
}

void PotentialModel::fill_row(double depth, double x_center, const Grid& g,
                              std::vector<double>& out) const {
    out.resize(g.n());
    for (int i = 0; i < g.n(); ++i) out[i] = value(depth, g.x(i) - x_center);
}

double harmonic_spectrum(double omega, double depth, int n) {
    if (n < 0) throw ConfigError("harmonic_spectrum: n must be >= 0");
    return omega * (n + 0.5) - depth;
}

double lattice_spectrum_perturbative(double depth, int n) {
    if (n < 0) throw ConfigError("lattice_spectrum_perturbative: n must be >= 0");
    if (depth < 25.0)
        log_warn("lattice_spectrum_perturbative: depth below 50 recoil energies, "
                 "first-order result unreliable");
    const double e_rec = 0.5;
    const double omega = std::sqrt(2.0 * depth);
    return harmonic_spectrum(omega, depth, n) - 0.25 * (2.0 * n * (n + 1.0) + 1.0) * e_rec;
}

double tweezer_correction(double waist, int n) {
    if (n < 0) throw ConfigError("tweezer_correction: n must be >= 0");
    if (!(waist > 0.0)) throw ConfigError("tweezer_correction: waist must be positive");
    return 3.0 * (2.0 * n * (n + 1.0) + 1.0) / (8.0 * waist * waist);
}

double tweezer_spectrum_perturbative(double depth, double waist, int n) {
    const double omega = 2.0 * std::sqrt(depth) / waist;
    return harmonic_spectrum(omega, depth, n) - tweezer_correction(waist, n);
}

namespace {
// Raised cosine from 0 to 1, C^1 at both ends.
double ramp_shape(double u) { return 0.5 * (1.0 - std::cos(std::numbers::pi * u)); }
}  // namespace

DepthSchedule::DepthSchedule(double base, double peak_up, double peak_down,
                             double window_start, double t_ramp, double t_hold)
    : base_(base), peak_up_(peak_up), peak_down_(peak_down),
      window_start_(window_start), t_ramp_(t_ramp), t_hold_(t_hold) {
    if (!(base > 0.0) || !(peak_up > 0.0) || !(peak_down > 0.0))
        throw ConfigError("DepthSchedule: depths must be positive");
    if (t_ramp < 0.0 || t_hold < 0.0)
        throw ConfigError("DepthSchedule: negative duration");
}

double DepthSchedule::depth(Spin s, double t) const {
    const double peak = s == Spin::Up ? peak_up_ : peak_down_;
    const double rel = t - window_start_;
    if (rel <= 0.0 || rel >= 2.0 * t_ramp_ + t_hold_) return base_;
    double f;
    if (rel < t_ramp_)
        f = ramp_shape(rel / t_ramp_);
    else if (rel <= t_ramp_ + t_hold_)
        f = 1.0;
    else
        f = ramp_shape((2.0 * t_ramp_ + t_hold_ - rel) / t_ramp_);
    return base_ + (peak - base_) * f;
}

DepthSchedule DepthSchedule::with_hold(double t_hold) const {
    return DepthSchedule(base_, peak_up_, peak_down_, window_start_, t_ramp_, t_hold);
}

DepthSchedule DepthSchedule::with_window_start(double t0) const {
    return DepthSchedule(base_, peak_up_, peak_down_, t0, t_ramp_, t_hold_);
}

DepthSchedule make_parity_schedule(double base, double peak_up, double peak_down,
                                   double t_ramp, double t_hold, double window_start) {
    return DepthSchedule(base, peak_up, peak_down, window_start, t_ramp, t_hold);
}

TrapTrajectory::TrapTrajectory(double x_target, double v_target, double t_on,
                               double t_switch)
    : x_(x_target), v_(v_target), t_on_(t_on), t_switch_(t_switch) {
    if (t_switch < 0.0) throw ConfigError("TrapTrajectory: negative switch time");
}

double TrapTrajectory::position(double t) const {
    const double rel = t - t_on_;
    if (rel < 0.0) return 0.0;
    if (rel >= t_switch_) return x_ + v_ * (rel - 0.5 * t_switch_);
    const double s = rel / t_switch_;
    const double smooth = s * s * (3.0 - 2.0 * s);
    const double vel_accum = s * s * s * (1.0 - 0.5 * s);  // integral of smoothstep
    return x_ * smooth + v_ * t_switch_ * vel_accum;
}

double TrapTrajectory::velocity(double t) const {
    const double rel = t - t_on_;
    if (rel < 0.0) return 0.0;
    if (rel >= t_switch_) return v_;
    const double s = rel / t_switch_;
    const double dsmooth = 6.0 * s * (1.0 - s) / t_switch_;
    return x_ * dsmooth + v_ * s * s * (3.0 - 2.0 * s);
}

TrapTrajectory make_displacement_trajectory(double x, double p, double t_on,
                                            double t_switch) {
    return TrapTrajectory(x, p, t_on, t_switch);
}

}  // namespace wigsim
