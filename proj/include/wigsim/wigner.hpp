#pragma once

#include <string>
#include <vector>

#include "wigsim/eigensolver.hpp"
#include "wigsim/wavefunction.hpp"

namespace wigsim {

// Rectangular map of the signed contrast C(x, p) = pi * hbar * W(x, p).
// Axes are dimensionless phase-space coordinates in ground-state widths
// (x / dx0, p / dp0) of the reference frequency stored in scales.
struct WignerGrid {
    std::vector<double> x;  // strictly increasing
    std::vector<double> p;  // strictly increasing
    std::vector<double> c;  // row-major, c[ix * p.size() + ip]
    GroundStateScales scales{0.0, 0.0, 0.0};
    std::string convention = "C = pi*hbar*W; axes in (dx0, dp0) units";
    std::string schedule_hash;  // empty when no depth schedule was involved

    double& at(int ix, int ip) { return c[static_cast<size_t>(ix) * p.size() + ip]; }
    double at(int ix, int ip) const { return c[static_cast<size_t>(ix) * p.size() + ip]; }
};

// Shape and axis monotonicity -> ConfigError; |C| > 1 + 1e-9 -> NumericalError.
void validate(const WignerGrid& g);

struct OracleResult {
    WignerGrid grid;
    std::string method;         // "integral-transform" | "parity-sum"
    int n_max = 0;              // parity-sum basis cutoff (0: not applicable)
    double min_captured = 1.0;  // worst captured population over the grid
    double max_imag = 0.0;      // largest |Im W| discarded when taking Re
};

// W(x, p) = (1/pi) Int dy psi*(x+y) psi(x-y) e^{2ipy} on the state's own
// sampling: per x the product row is built by spectral translation and the
// y integral is summed against the e^{2ipy} kernel, which is the exact
// trigonometric interpolant for p off the conjugate grid.  Probe points with
// |x| > half_width or |p| > pi/(2 dx) are outside the sampling bounds
// -> DomainError.  The periodic domain also carries the antipodal
// interference image of the state (centred half a period from the state);
// probe well within half a domain of the state's centre.
OracleResult wigner_transform(const WaveFunction& psi,
                              const std::vector<double>& x_over_dx0,
                              const std::vector<double>& p_over_dp0,
                              const GroundStateScales& scales);

struct ParitySum {
    double w = 0.0;         // Sum_n (-1)^n Q_n / (pi*hbar)
    double captured = 0.0;  // Sum_n Q_n
    int n_max = 0;
};

// Q_n = |<n|D^dag(x, p)|psi>|^2 against a parity-alternating basis (harmonic
// Fock states).  Truncation is declared failed when the basis captures less
// than 1 - 1e-4 of the displaced state -> NumericalError.
ParitySum wigner_parity_sum(const WaveFunction& psi, double x_over_dx0,
                            double p_over_dp0, const GroundStateScales& scales,
                            const EigenBasis& basis, int n_max = 12);

// Convenience: builds the harmonic basis at scales.omega once and evaluates
// the parity sum pointwise over the grid.
OracleResult wigner_parity_grid(const WaveFunction& psi,
                                const std::vector<double>& x_over_dx0,
                                const std::vector<double>& p_over_dp0,
                                const GroundStateScales& scales, int n_max = 12);

struct GridDiff {
    double max_abs = 0.0;
    double rms = 0.0;
    WignerGrid diff;  // b - a per point
};

// Axes must match exactly -> ConfigError.
GridDiff compare(const WignerGrid& a, const WignerGrid& b);

}  // namespace wigsim
