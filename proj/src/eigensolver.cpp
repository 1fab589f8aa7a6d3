#include "wigsim/eigensolver.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "wigsim/errors.hpp"

namespace wigsim {

namespace {

// Position samples of a periodic window of m grid steps centred on x = 0.
double window_x(int j, int m, double dx) { return (j - m / 2) * dx; }

// Kinetic matrix in position basis: circulant built from the exact spectral
// symbol p^2/2 of the windowed periodic domain.  Real symmetric because the
// symbol is even.
Eigen::MatrixXd window_hamiltonian(const PotentialModel& model, double depth,
                                   int m, double dx) {
    const double dp = 2.0 * std::numbers::pi / (m * dx);
    std::vector<double> t(m, 0.0);
    for (int d = 0; d < m; ++d) {
        double s = 0.0;
        for (int j = 0; j < m; ++j) {
            const double p = dp * (j < m / 2 ? j : j - m);
            s += 0.5 * p * p * std::cos(2.0 * std::numbers::pi * j * d / m);
        }
        t[d] = s / m;
    }
    Eigen::MatrixXd h(m, m);
    for (int j = 0; j < m; ++j)
        for (int l = 0; l < m; ++l) h(j, l) = t[(j - l + m) % m];
    for (int j = 0; j < m; ++j) h(j, j) += model.value(depth, window_x(j, m, dx));
    return h;
}

int resolve_window(const PotentialModel& model, const Grid& grid, int window_points) {
    if (window_points == 0)
        return model.kind() == PotentialModel::Kind::Lattice ? lattice_site_points(grid)
                                                             : grid.n();
    if (window_points < 8 || window_points > grid.n() || window_points % 2 != 0)
        throw ConfigError("stationary_states: window_points must be even, >= 8 and "
                          "fit the grid");
    return window_points;
}

}  // namespace

int lattice_site_points(const Grid& grid) {
    const double exact = std::numbers::pi / grid.dx();
    const int m = static_cast<int>(std::lround(exact));
    if (std::abs(exact - m) > 1e-9 || m < 8 || m > grid.n())
        throw ConfigError("grid is not commensurate with the lattice period");
    return m;
}

EigenBasis stationary_states(const PotentialModel& model, double depth,
                             const Grid& grid, int k, int window_points) {
    const int m = resolve_window(model, grid, window_points);
    if (k < 1 || k > m)
        throw ConfigError("stationary_states: need 1 <= k <= window size, got k = " +
                          std::to_string(k));

    Eigen::MatrixXd h = window_hamiltonian(model, depth, m, grid.dx());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    if (solver.info() != Eigen::Success)
        throw NumericalError("stationary_states: diagonalization failed");

    EigenBasis basis;
    basis.window_points = m;
    basis.energies.reserve(k);
    basis.states.reserve(k);
    const int offset = grid.n() / 2 - m / 2;
    const double amp_scale = 1.0 / std::sqrt(grid.dx());
    for (int band = 0; band < k; ++band) {
        basis.energies.push_back(solver.eigenvalues()(band));
        Eigen::VectorXd v = solver.eigenvectors().col(band);
        // Deterministic sign: largest-magnitude sample positive.
        int peak = 0;
        for (int j = 1; j < m; ++j)
            if (std::abs(v(j)) > std::abs(v(peak))) peak = j;
        if (v(peak) < 0.0) v = -v;
        WaveFunction psi(grid);
        for (int j = 0; j < m; ++j) psi.amp[offset + j] = v(j) * amp_scale;
        basis.states.push_back(std::move(psi));
    }
    return basis;
}

EigenBasis fock_basis(const PotentialModel& model, double depth, const Grid& grid,
                      int k) {
    return stationary_states(model, depth, grid, k, 0);
}

double eigen_residual(const PotentialModel& model, double depth, const Grid& grid,
                      const WaveFunction& state, double energy, int window_points) {
    const int m = resolve_window(model, grid, window_points);
    const int offset = grid.n() / 2 - m / 2;
    Eigen::VectorXd v(m);
    for (int j = 0; j < m; ++j) {
        const cplx a = state.amp[offset + j];
        v(j) = std::real(a);
        if (std::abs(std::imag(a)) > 1e-12)
            throw ConfigError("eigen_residual: expected a real-valued eigenstate");
    }
    v *= std::sqrt(grid.dx());
    Eigen::MatrixXd h = window_hamiltonian(model, depth, m, grid.dx());
    return (h * v - energy * v).norm();
}

DifferentialShift differential_shift(const PotentialModel& model, double depth_up,
                                     double depth_down, int n, const Grid& grid,
                                     int window_points) {
    if (n < 0) throw ConfigError("differential_shift: n must be >= 0");
    EigenBasis up = stationary_states(model, depth_up, grid, n + 1, window_points);
    EigenBasis down = stationary_states(model, depth_down, grid, n + 1, window_points);
    const double w_up = model.omega(depth_up);
    const double w_down = model.omega(depth_down);
    const double d_omega = w_up - w_down;
    DifferentialShift out;
    out.exact = up.energies[n] - down.energies[n];
    out.harmonic = d_omega * n - depth_up + depth_down + 0.5 * d_omega;
    return out;
}

namespace {

// Adaptive Simpson on [a, b] with cached endpoint values.
double simpson_rec(const std::function<double(double)>& f, double a, double fa,
                   double b, double fb, double fm, double whole, double tol,
                   int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson_rec(f, a, fa, m, fm, flm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, fm, b, fb, frm, right, 0.5 * tol, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol) {
    if (!(b > a)) return 0.0;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, fa, b, fb, fm, whole, tol, 24);
}

}  // namespace

double phi0_integral(const PotentialModel& model, const DepthSchedule& schedule,
                     const Grid& grid, int window_points, double tol) {
    const int m = resolve_window(model, grid, window_points);
    auto ground = [&](double depth) {
        return stationary_states(model, depth, grid, 1, m).energies[0];
    };
    auto de0 = [&](double t) {
        return ground(schedule.depth(Spin::Up, t)) - ground(schedule.depth(Spin::Down, t));
    };
    const double t0 = schedule.window_start();
    const double tr = schedule.t_ramp();
    const double th = schedule.t_hold();
    double phi = 0.0;
    if (tr > 0.0) {
        // Ramp-down mirrors ramp-up through the same depth path.
        phi += 2.0 * adaptive_simpson(de0, t0, t0 + tr, tol);
    }
    if (th > 0.0)
        phi += th * (ground(schedule.peak(Spin::Up)) - ground(schedule.peak(Spin::Down)));
    return phi;
}

}  // namespace wigsim
