#include "wigsim/wavefunction.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "wigsim/errors.hpp"
#include "wigsim/fft.hpp"

namespace wigsim {

namespace {

void check_same_repr(const WaveFunction& a, const WaveFunction& b, const char* op) {
    if (a.grid != b.grid || a.space != b.space)
        throw ConfigError(std::string(op) + ": operands live on different grids/spaces");
}

void check_position(const WaveFunction& psi, const char* op) {
    if (psi.space != Space::Position)
        throw ConfigError(std::string(op) + ": expects a position-space state");
}

}  // namespace

double norm(const WaveFunction& psi) {
    double s = 0.0;
    for (const cplx& c : psi.amp) s += std::norm(c);
    return std::sqrt(s * psi.step());
}

void normalize(WaveFunction& psi) {
    double n = norm(psi);
    if (!(n > 0.0)) throw NumericalError("normalize: zero-norm state");
    for (cplx& c : psi.amp) c /= n;
}

cplx inner(const WaveFunction& a, const WaveFunction& b) {
    check_same_repr(a, b, "inner");
    cplx s(0.0, 0.0);
    for (int i = 0; i < a.grid.n(); ++i) s += std::conj(a.amp[i]) * b.amp[i];
    return s * a.step();
}

double fidelity(const WaveFunction& a, const WaveFunction& b) {
    double na = norm(a), nb = norm(b);
    if (!(na > 0.0) || !(nb > 0.0)) throw NumericalError("fidelity: zero-norm state");
    return std::norm(inner(a, b)) / (na * na * nb * nb);
}

WaveFunction transform(const WaveFunction& psi) {
    const int n = psi.grid.n();
    WaveFunction out = psi;
    // x_j = (j - n/2)*dx introduces the alternating-sign factor relative to
    // the raw DFT; dx/sqrt(2*pi) makes the map unitary.
    const double c = psi.grid.dx() / std::sqrt(2.0 * std::numbers::pi);
    if (psi.space == Space::Position) {
        fft_forward(out.amp);
        for (int m = 0; m < n; ++m)
            out.amp[m] *= (m & 1) ? -c : c;
        out.space = Space::Momentum;
    } else {
        for (int m = 0; m < n; ++m)
            out.amp[m] *= (m & 1) ? -1.0 : 1.0;
        fft_backward(out.amp);
        const double inv = 1.0 / (c * n);
        for (cplx& a : out.amp) a *= inv;
        out.space = Space::Position;
    }
    return out;
}

WaveFunction reflected(const WaveFunction& psi) {
    check_position(psi, "reflected");
    const int n = psi.grid.n();
    WaveFunction out(psi.grid);
    for (int i = 0; i < n; ++i) out.amp[psi.grid.reflect(i)] = psi.amp[i];
    return out;
}

double parity_expectation(const WaveFunction& psi) {
    check_position(psi, "parity_expectation");
    const int n = psi.grid.n();
    double s = 0.0;
    for (int i = 0; i < n; ++i)
        s += std::real(std::conj(psi.amp[i]) * psi.amp[psi.grid.reflect(i)]);
    return s * psi.grid.dx();
}

WaveFunction translated(const WaveFunction& psi, double shift) {
    check_position(psi, "translated");
    WaveFunction mom = transform(psi);
    const int n = psi.grid.n();
    for (int m = 0; m < n; ++m) {
        const double ph = psi.grid.p(m) * shift;
        mom.amp[m] *= cplx(std::cos(ph), std::sin(ph));
    }
    return transform(mom);
}

WaveFunction displace_state(const WaveFunction& psi, double x0, double p0,
                            double support_tol) {
    check_position(psi, "displace_state");
    WaveFunction out = translated(psi, -x0);  // psi(x - x0)
    const int n = psi.grid.n();
    for (int i = 0; i < n; ++i) {
        const double ph = p0 * psi.grid.x(i);
        out.amp[i] *= cplx(std::cos(ph), std::sin(ph));
    }
    // Anything living in the outer edge bands has been wrapped through the
    // periodic boundary and no longer represents a displaced copy.
    const int band = std::max(1, n / 32);
    double edge = 0.0;
    for (int i = 0; i < band; ++i)
        edge += std::norm(out.amp[i]) + std::norm(out.amp[n - 1 - i]);
    edge *= psi.grid.dx();
    if (edge > support_tol)
        throw DomainError("displace_state: " + std::to_string(edge) +
                          " probability in wrap-around band (tol " +
                          std::to_string(support_tol) + ")");
    return out;
}

double position_mean(const WaveFunction& psi) {
    check_position(psi, "position_mean");
    double s = 0.0;
    for (int i = 0; i < psi.grid.n(); ++i)
        s += psi.grid.x(i) * std::norm(psi.amp[i]);
    return s * psi.grid.dx();
}

double position_variance(const WaveFunction& psi) {
    const double mu = position_mean(psi);
    double s = 0.0;
    for (int i = 0; i < psi.grid.n(); ++i) {
        const double d = psi.grid.x(i) - mu;
        s += d * d * std::norm(psi.amp[i]);
    }
    return s * psi.grid.dx();
}

double momentum_mean(const WaveFunction& psi) {
    WaveFunction mom = psi.space == Space::Momentum ? psi : transform(psi);
    double s = 0.0;
    for (int i = 0; i < mom.grid.n(); ++i)
        s += mom.grid.p(i) * std::norm(mom.amp[i]);
    return s * mom.grid.dp();
}

double momentum_variance(const WaveFunction& psi) {
    WaveFunction mom = psi.space == Space::Momentum ? psi : transform(psi);
    const double mu = momentum_mean(mom);
    double s = 0.0;
    for (int i = 0; i < mom.grid.n(); ++i) {
        const double d = mom.grid.p(i) - mu;
        s += d * d * std::norm(mom.amp[i]);
    }
    return s * mom.grid.dp();
}

double kinetic_energy(const WaveFunction& psi) {
    WaveFunction mom = psi.space == Space::Momentum ? psi : transform(psi);
    double s = 0.0;
    for (int i = 0; i < mom.grid.n(); ++i) {
        const double p = mom.grid.p(i);
        s += 0.5 * p * p * std::norm(mom.amp[i]);
    }
    return s * mom.grid.dp();
}

double potential_energy(const WaveFunction& psi, const std::vector<double>& v) {
    check_position(psi, "potential_energy");
    if (static_cast<int>(v.size()) != psi.grid.n())
        throw ConfigError("potential_energy: potential row size mismatch");
    double s = 0.0;
    for (int i = 0; i < psi.grid.n(); ++i) s += v[i] * std::norm(psi.amp[i]);
    return s * psi.grid.dx();
}

double energy_expectation(const WaveFunction& psi, const std::vector<double>& v) {
    return kinetic_energy(psi) + potential_energy(psi, v);
}

GroundStateScales make_scales(double omega) {
    if (!(omega > 0.0)) throw ConfigError("make_scales: omega must be positive");
    const double dx0 = std::sqrt(1.0 / (2.0 * omega));
    return GroundStateScales{omega, dx0, 0.5 / dx0};
}

}  // namespace wigsim
