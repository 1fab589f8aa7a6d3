#include "wigsim/propagator.hpp"

#include <cmath>
#include <limits>
#include <memory>

#include "wigsim/errors.hpp"
#include "wigsim/fft.hpp"

namespace wigsim {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void apply_phase(std::vector<cplx>& a, const std::vector<cplx>& phase) {
    for (size_t i = 0; i < a.size(); ++i) a[i] *= phase[i];
}

// One Strang step exp(-iV h/2) exp(-iT h) exp(-iV h/2) with the potential
// sampled at the step midpoint.  Potential phase rows are rebuilt only when
// the (depth, centre) signature or the step size changes, so static
// segments cost two FFTs and three vector multiplies per component.
class Stepper {
public:
    Stepper(const Grid& grid, const PotentialSource& src) : grid_(grid), src_(src) {}

    void step(std::vector<cplx>& a, Spin spin, double t, double h) {
        const double tm = t + 0.5 * h;
        const auto sig = src_.signature(spin, tm);
        Pot& pp = pot_[spin == Spin::Up ? 0 : 1];
        if (pp.phase.empty() || pp.sig != sig || pp.dt != h) {
            row_.resize(grid_.n());
            src_.fill(spin, tm, row_);
            if (static_cast<int>(row_.size()) != grid_.n())
                throw ConfigError("evolve: potential row size mismatch");
            pp.phase.resize(row_.size());
            for (size_t i = 0; i < row_.size(); ++i) {
                const double ph = -0.5 * row_[i] * h;
                pp.phase[i] = cplx(std::cos(ph), std::sin(ph));
            }
            pp.sig = sig;
            pp.dt = h;
        }
        ensure_kinetic(h);
        apply_phase(a, pp.phase);
        fft_forward(a);
        apply_phase(a, kin_);
        fft_backward(a);
        apply_phase(a, pp.phase);
    }

private:
    void ensure_kinetic(double h) {
        if (h == kin_dt_ && !kin_.empty()) return;
        kin_dt_ = h;
        kin_.resize(grid_.n());
        const double inv_n = 1.0 / grid_.n();  // absorbs the FFT round trip scale
        for (int i = 0; i < grid_.n(); ++i) {
            const double p = grid_.p(i);
            const double ph = -0.5 * p * p * h;
            kin_[i] = cplx(std::cos(ph) * inv_n, std::sin(ph) * inv_n);
        }
    }

    struct Pot {
        std::pair<double, double> sig{kNaN, kNaN};
        double dt = kNaN;
        std::vector<cplx> phase;
    };

    const Grid& grid_;
    const PotentialSource& src_;
    std::vector<double> row_;
    Pot pot_[2];
    std::vector<cplx> kin_;
    double kin_dt_ = kNaN;
};

struct StepPlan {
    long n_full;
    double h_last;
};

StepPlan plan_steps(const EvolutionSpec& spec) {
    if (!(spec.dt > 0.0)) throw ConfigError("evolve: dt must be positive");
    if (spec.t_end < spec.t_start) throw ConfigError("evolve: t_end before t_start");
    const double duration = spec.t_end - spec.t_start;
    StepPlan plan;
    plan.n_full = static_cast<long>(std::floor(duration / spec.dt * (1.0 + 1e-12)));
    plan.h_last = spec.t_end - (spec.t_start + plan.n_full * spec.dt);
    if (plan.h_last <= 1e-12 * spec.dt) plan.h_last = 0.0;
    return plan;
}

}  // namespace

PotentialSource make_source(const TrapField& field, const Grid& grid) {
    PotentialSource src;
    src.fill = [field, grid](Spin s, double t, std::vector<double>& out) {
        field.fill_row(s, t, grid, out);
    };
    src.signature = [field](Spin s, double t) {
        return std::make_pair(field.depth(s, t), field.center(t));
    };
    return src;
}

PotentialSource make_static_source(std::vector<double> row_up,
                                   std::vector<double> row_down) {
    auto up = std::make_shared<std::vector<double>>(std::move(row_up));
    auto down = std::make_shared<std::vector<double>>(std::move(row_down));
    PotentialSource src;
    src.fill = [up, down](Spin s, double, std::vector<double>& out) {
        out = s == Spin::Up ? *up : *down;
    };
    src.signature = [](Spin s, double) {
        return std::make_pair(s == Spin::Up ? 1.0 : 2.0, 0.0);
    };
    return src;
}

void evolve_spinor(SpinorState& s, const PotentialSource& src,
                   const EvolutionSpec& spec) {
    if (s.up.space != Space::Position || s.down.space != Space::Position)
        throw ConfigError("evolve_spinor: states must be in position space");
    if (s.up.grid != s.down.grid)
        throw ConfigError("evolve_spinor: component grids differ");
    const StepPlan plan = plan_steps(spec);
    if (plan.n_full == 0 && plan.h_last == 0.0) return;

    Stepper stepper(s.up.grid, src);
    for (long i = 0; i < plan.n_full; ++i) {
        const double t = spec.t_start + i * spec.dt;
        stepper.step(s.up.amp, Spin::Up, t, spec.dt);
        stepper.step(s.down.amp, Spin::Down, t, spec.dt);
        if (spec.checkpoint && spec.checkpoint_stride > 0 &&
            (i + 1) % spec.checkpoint_stride == 0)
            spec.checkpoint(t + spec.dt, s);
    }
    if (plan.h_last > 0.0) {
        const double t = spec.t_start + plan.n_full * spec.dt;
        stepper.step(s.up.amp, Spin::Up, t, plan.h_last);
        stepper.step(s.down.amp, Spin::Down, t, plan.h_last);
    }
    if (spec.checkpoint && spec.checkpoint_stride > 0) {
        const bool emitted_at_end = plan.h_last == 0.0 && plan.n_full > 0 &&
                                    plan.n_full % spec.checkpoint_stride == 0;
        if (!emitted_at_end) spec.checkpoint(spec.t_end, s);
    }
}

void evolve(WaveFunction& psi,
            const std::function<void(double, std::vector<double>&)>& fill_row,
            const EvolutionSpec& spec) {
    if (psi.space != Space::Position)
        throw ConfigError("evolve: state must be in position space");
    const StepPlan plan = plan_steps(spec);
    if (plan.n_full == 0 && plan.h_last == 0.0) return;

    PotentialSource src;
    src.fill = [&fill_row](Spin, double t, std::vector<double>& out) { fill_row(t, out); };
    // Distinct times always rebuild: correct for arbitrary time dependence.
    src.signature = [](Spin, double t) { return std::make_pair(t, 0.0); };

    Stepper stepper(psi.grid, src);
    for (long i = 0; i < plan.n_full; ++i) {
        const double t = spec.t_start + i * spec.dt;
        stepper.step(psi.amp, Spin::Down, t, spec.dt);
    }
    if (plan.h_last > 0.0)
        stepper.step(psi.amp, Spin::Down, spec.t_start + plan.n_full * spec.dt,
                     plan.h_last);
}

WaveFunction to_comoving(const WaveFunction& psi, double x_c, double v) {
    WaveFunction out = translated(psi, x_c);
    for (int i = 0; i < out.grid.n(); ++i) {
        const double ph = -v * out.grid.x(i);
        out.amp[i] *= cplx(std::cos(ph), std::sin(ph));
    }
    return out;
}

SpinorState to_comoving(const SpinorState& s, double x_c, double v) {
    return SpinorState(to_comoving(s.up, x_c, v), to_comoving(s.down, x_c, v));
}

double probability_outside(const WaveFunction& psi, double x_c, double half_width) {
    double p = 0.0;
    for (int i = 0; i < psi.grid.n(); ++i) {
        const double rel = psi.grid.wrap(psi.grid.x(i) - x_c);
        if (std::abs(rel) > half_width) p += std::norm(psi.amp[i]);
    }
    return p * psi.grid.dx();
}

double probability_outside(const SpinorState& s, double x_c, double half_width) {
    return probability_outside(s.up, x_c, half_width) +
           probability_outside(s.down, x_c, half_width);
}

}  // namespace wigsim
