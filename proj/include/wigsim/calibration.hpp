#pragma once

#include <string>
#include <vector>

#include "wigsim/ramsey.hpp"
#include "wigsim/wavefunction.hpp"

namespace wigsim {

// Diagonal thermal occupation, geometric in n and renormalized after
// truncation.  p0 is the ground-state fraction before renormalization.
struct ThermalEnsemble {
    double p0 = 1.0;
    int n_max = 0;
    std::vector<double> weights;
};

// ConfigError unless 0 < p0 <= 1 and n_max >= 0.
ThermalEnsemble thermal_weights(double p0, int n_max);

struct CurvePointError {
    int index = 0;
    std::string what;
};

// Ramsey fringe contrast versus hold time.  Failed points hold NaN.
struct ContrastCurve {
    std::vector<double> hold;
    std::vector<double> contrast;
    std::vector<CurvePointError> errors;
};

// For each hold time: evolve every occupied trap level through the sequence
// probing (x, p), average w over the ensemble at n_phases equally spaced
// second-pulse phases, and fit the first-harmonic amplitude.  The fit is
// independent of the compensation phase, so the template is reused across
// hold times without retuning phi0.  fock[n] must be the trap level n at the
// base depth; the ensemble must not occupy levels beyond fock.size() - 1.
ContrastCurve contrast_vs_hold(const std::vector<WaveFunction>& fock,
                               const ThermalEnsemble& ensemble,
                               const std::vector<double>& hold_times,
                               const SequenceTemplate& tpl,
                               double x_over_dx0 = 0.0, double p_over_dp0 = 0.0,
                               int n_phases = 16, int jobs = 1);

// Hold time of the first contrast collapse: the first interior local minimum
// of the curve, refined by parabolic interpolation through its neighbours.
// NaN points are skipped.  CalibrationError when the curve is flat, monotone
// or has fewer than three usable points.
double find_collapse(const ContrastCurve& curve);

struct CalibrationResult {
    double t_hold = 0.0;
    ContrastCurve coarse;
    ContrastCurve fine;
};

// Two-stage scan: coarse_points holds over (0, max_hold], then a 9-point
// refinement one coarse spacing wide around the collapse.  The returned hold
// feeds with_hold_time() to retune the template.
CalibrationResult calibrate_hold(const std::vector<WaveFunction>& fock,
                                 const ThermalEnsemble& ensemble,
                                 const SequenceTemplate& tpl, double max_hold,
                                 int coarse_points = 41, int n_phases = 16,
                                 int jobs = 1);

}  // namespace wigsim
