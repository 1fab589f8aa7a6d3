#include "wigsim/wigner.hpp"

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>

#include "wigsim/errors.hpp"

namespace wigsim {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_axis(const std::vector<double>& a, const char* name) {
    if (a.empty()) throw ConfigError(std::string("wigner grid: empty ") + name + " axis");
    for (size_t i = 1; i < a.size(); ++i)
        if (!(a[i] > a[i - 1]))
            throw ConfigError(std::string("wigner grid: ") + name +
                              " axis not strictly increasing at index " + std::to_string(i));
}

WaveFunction as_position(const WaveFunction& psi) {
    return psi.space == Space::Position ? psi : transform(psi);
}

}  // namespace

void validate(const WignerGrid& g) {
    check_axis(g.x, "x");
    check_axis(g.p, "p");
    if (g.c.size() != g.x.size() * g.p.size())
        throw ConfigError("wigner grid: value count " + std::to_string(g.c.size()) +
                          " does not match " + std::to_string(g.x.size()) + " x " +
                          std::to_string(g.p.size()) + " axes");
    for (size_t i = 0; i < g.c.size(); ++i)
        if (!(std::abs(g.c[i]) <= 1.0 + 1e-9))
            throw NumericalError("wigner grid: |C| = " + std::to_string(std::abs(g.c[i])) +
                                 " exceeds 1 at flat index " + std::to_string(i));
}

OracleResult wigner_transform(const WaveFunction& psi,
                              const std::vector<double>& x_over_dx0,
                              const std::vector<double>& p_over_dp0,
                              const GroundStateScales& scales) {
    check_axis(x_over_dx0, "x");
    check_axis(p_over_dp0, "p");
    const WaveFunction pos = as_position(psi);
    const Grid& g = pos.grid;
    const int n = g.n();
    const double p_bound = kPi / (2.0 * g.dx());

    for (double xs : x_over_dx0)
        if (std::abs(xs * scales.dx0) > g.half_width() * (1.0 + 1e-12))
            throw DomainError("wigner_transform: x = " + std::to_string(xs) +
                              " dx0 is outside the grid half-width");
    for (double ps : p_over_dp0)
        if (std::abs(ps * scales.dp0) > p_bound * (1.0 + 1e-12))
            throw DomainError("wigner_transform: p = " + std::to_string(ps) +
                              " dp0 is beyond the e^{2ipy} sampling bound pi/(2 dx)");

    // Kernel rows e^{2 i p y} are x-independent; build them once.
    const size_t np = p_over_dp0.size();
    std::vector<cplx> kernel(np * n);
    for (size_t j = 0; j < np; ++j) {
        const double p = p_over_dp0[j] * scales.dp0;
        for (int i = 0; i < n; ++i)
            kernel[j * n + i] = std::polar(1.0, 2.0 * p * g.x(i));
    }

    OracleResult out;
    out.method = "integral-transform";
    out.grid.x = x_over_dx0;
    out.grid.p = p_over_dp0;
    out.grid.scales = scales;
    out.grid.c.resize(x_over_dx0.size() * np);

    std::vector<cplx> f(n);
    for (size_t ix = 0; ix < x_over_dx0.size(); ++ix) {
        const WaveFunction plus = translated(pos, x_over_dx0[ix] * scales.dx0);
        const WaveFunction minus = reflected(plus);
        for (int i = 0; i < n; ++i) f[i] = std::conj(plus.amp[i]) * minus.amp[i];
        for (size_t j = 0; j < np; ++j) {
            cplx acc(0.0, 0.0);
            const cplx* k = kernel.data() + j * n;
            for (int i = 0; i < n; ++i) acc += f[i] * k[i];
            const cplx w = acc * (g.dx() / kPi);
            out.max_imag = std::max(out.max_imag, std::abs(std::imag(w)));
            out.grid.at(static_cast<int>(ix), static_cast<int>(j)) = kPi * std::real(w);
        }
    }
    validate(out.grid);
    return out;
}

ParitySum wigner_parity_sum(const WaveFunction& psi, double x_over_dx0,
                            double p_over_dp0, const GroundStateScales& scales,
                            const EigenBasis& basis, int n_max) {
    if (n_max < 0 || n_max + 1 > static_cast<int>(basis.states.size()))
        throw ConfigError("wigner_parity_sum: basis holds " +
                          std::to_string(basis.states.size()) + " states, need n_max + 1 = " +
                          std::to_string(n_max + 1));
    const WaveFunction pos = as_position(psi);
    const WaveFunction back =
        displace_state(pos, -x_over_dx0 * scales.dx0, -p_over_dp0 * scales.dp0);

    ParitySum res;
    res.n_max = n_max;
    double sign = 1.0;
    for (int m = 0; m <= n_max; ++m, sign = -sign) {
        const double q = std::norm(inner(basis.states[m], back));
        res.captured += q;
        res.w += sign * q;
    }
    res.w /= kPi;
    if (res.captured < 1.0 - 1e-4)
        throw NumericalError("wigner_parity_sum: basis through n = " + std::to_string(n_max) +
                             " captures only " + std::to_string(res.captured) +
                             " of the displaced state");
    return res;
}

OracleResult wigner_parity_grid(const WaveFunction& psi,
                                const std::vector<double>& x_over_dx0,
                                const std::vector<double>& p_over_dp0,
                                const GroundStateScales& scales, int n_max) {
    check_axis(x_over_dx0, "x");
    check_axis(p_over_dp0, "p");
    if (scales.omega <= 0.0)
        throw ConfigError("wigner_parity_grid: reference frequency must be positive");
    const WaveFunction pos = as_position(psi);
    const EigenBasis basis = fock_basis(PotentialModel::harmonic(scales.omega, 1.0), 1.0,
                                        pos.grid, n_max + 1);

    OracleResult out;
    out.method = "parity-sum";
    out.n_max = n_max;
    out.grid.x = x_over_dx0;
    out.grid.p = p_over_dp0;
    out.grid.scales = scales;
    out.grid.c.resize(x_over_dx0.size() * p_over_dp0.size());
    for (size_t ix = 0; ix < x_over_dx0.size(); ++ix)
        for (size_t jp = 0; jp < p_over_dp0.size(); ++jp) {
            const ParitySum point =
                wigner_parity_sum(pos, x_over_dx0[ix], p_over_dp0[jp], scales, basis, n_max);
            out.min_captured = std::min(out.min_captured, point.captured);
            out.grid.at(static_cast<int>(ix), static_cast<int>(jp)) = kPi * point.w;
        }
    validate(out.grid);
    return out;
}

GridDiff compare(const WignerGrid& a, const WignerGrid& b) {
    if (a.x != b.x || a.p != b.p)
        throw ConfigError("compare: wigner grids have different axes");
    if (a.c.size() != b.c.size())
        throw ConfigError("compare: wigner grids have different value counts");

    GridDiff d;
    d.diff.x = a.x;
    d.diff.p = a.p;
    d.diff.scales = a.scales;
    d.diff.convention = "difference b - a of two contrast grids";
    d.diff.c.resize(a.c.size());
    double sq = 0.0;
    for (size_t i = 0; i < a.c.size(); ++i) {
        const double e = b.c[i] - a.c[i];
        d.diff.c[i] = e;
        d.max_abs = std::max(d.max_abs, std::abs(e));
        sq += e * e;
    }
    d.rms = std::sqrt(sq / static_cast<double>(a.c.size()));
    return d;
}

}  // namespace wigsim
