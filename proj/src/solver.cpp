#include "helns/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "helns/errors.hpp"

namespace helns {

void SolverConfig::validate() const {
    if (!(nu > 0.0)) throw ConfigError("nu must be positive");
    if (!(t_end >= 0.0)) throw ConfigError("t_end must be nonnegative");
    if (!(dt_max > 0.0)) throw ConfigError("dt_max must be positive");
    if (!(cfl > 0.0 && cfl <= 1.0)) throw ConfigError("cfl must lie in (0,1]");
    if (output_every < 1) throw ConfigError("output_every must be >= 1");
}

VectorField nonlinear_rhs(const VectorField& v, DealiasMode mode) {
    VectorField rhs = leray_project(pointwise_cross(curl(v), v, mode));
    rhs *= -1.0;
    return rhs;
}

namespace {

void apply_viscous_factor(VectorField& f, double nu, double tau) {
    for_each_mode(f.grid(), [&](std::size_t idx, Wavevector k) {
        const double e = std::exp(-nu * k.norm2() * tau);
        for (int c = 0; c < 3; ++c) f.component(c)[idx] *= e;
    });
}

struct StepResult {
    SolverState state;
    // RK4-stage quadrature of int ||grad v||^2 over the step; same order as
    // the trajectory itself.
    double dissipation = 0.0;
};

// Classical RK4 on the integrating-factor transform w = exp(nu |k|^2 t) v:
//   v' = E v + (h/6) (E n1 + 2 E_half (n2 + n3) + n4),
// with E = exp(-nu |k|^2 h), E_half its square root, and the stage arguments
// damped accordingly. Linear part is exact; a Beltrami state (zero
// nonlinearity) decays bit-exactly by the viscous factor.
StepResult step_unchecked(const SolverState& state, const SolverConfig& cfg, double h) {
    const double nu = cfg.nu;
    const VectorField& v = state.v;

    VectorField v_half = v;
    apply_viscous_factor(v_half, nu, 0.5 * h);
    VectorField v_full = v_half;
    apply_viscous_factor(v_full, nu, 0.5 * h);

    const VectorField n1 = nonlinear_rhs(v);

    VectorField a2 = v;
    a2.add_scaled(n1, 0.5 * h);
    apply_viscous_factor(a2, nu, 0.5 * h);
    const VectorField n2 = nonlinear_rhs(a2);

    VectorField a3 = v_half;
    a3.add_scaled(n2, 0.5 * h);
    const VectorField n3 = nonlinear_rhs(a3);

    VectorField e_n3 = n3;
    apply_viscous_factor(e_n3, nu, 0.5 * h);
    VectorField a4 = v_full;
    a4.add_scaled(e_n3, h);
    const VectorField n4 = nonlinear_rhs(a4);

    const double g1 = spectral_norm_sq(v, 2.0);
    const double g2 = spectral_norm_sq(a2, 2.0);
    const double g3 = spectral_norm_sq(a3, 2.0);
    const double g4 = spectral_norm_sq(a4, 2.0);

    VectorField e_n1 = n1;
    apply_viscous_factor(e_n1, nu, h);
    VectorField n23 = n2;
    n23 += n3;
    apply_viscous_factor(n23, nu, 0.5 * h);

    VectorField out = v_full;
    out.add_scaled(e_n1, h / 6.0);
    out.add_scaled(n23, h / 3.0);
    out.add_scaled(n4, h / 6.0);

    // Divergence and mean-mode drift is pure rounding; clamp it every step.
    out = leray_project(out);
    return {SolverState{std::move(out), state.t + h},
            h / 6.0 * (g1 + 2.0 * (g2 + g3) + g4)};
}

double cfl_limit(const SolverConfig& cfg, const VectorField& v) {
    const double vmax = max_pointwise_speed(v);
    return vmax > 0.0 ? cfg.cfl * v.grid().dx() / vmax
                      : std::numeric_limits<double>::infinity();
}

}  // namespace

SolverState step(const SolverState& state, const SolverConfig& cfg, double dt) {
    cfg.validate();
    if (!(dt > 0.0)) throw CflViolation("dt must be positive");
    const double limit = std::min(cfg.dt_max, cfl_limit(cfg, state.v));
    if (dt > limit * (1.0 + 1e-12))
        throw CflViolation("dt = " + std::to_string(dt) + " exceeds the step limit " +
                           std::to_string(limit));
    return step_unchecked(state, cfg, dt).state;
}

Trajectory simulate(const SolverConfig& cfg, const VectorField& v0,
                    const StepObserver& observer) {
    cfg.validate();

    SolverState state{leray_project(v0), 0.0};
    truncate_modes(state.v);

    Trajectory traj;
    double dissipation_total = 0.0;
    auto record_step = [&](const SolverState& s) {
        traj.step_t.push_back(s.t);
        traj.step_energy.push_back(spectral_norm_sq(s.v, 0.0));
        traj.step_grad_sq.push_back(spectral_norm_sq(s.v, 2.0));
        traj.step_dissipation.push_back(dissipation_total);
        return traj.step_energy.back();
    };
    auto record_entry = [&](const SolverState& s) {
        TrajectoryEntry e;
        e.t = s.t;
        e.record.t = s.t;
        e.record.energy = traj.step_energy.back();
        e.record.grad_sq = traj.step_grad_sq.back();
        e.record.Y = spectral_norm_sq(s.v, 1.0);
        e.record.A32_sq = spectral_norm_sq(s.v, 3.0);
        if (cfg.keep_snapshots) e.snapshot = std::make_shared<VectorField>(s.v);
        if (observer) observer(s, e.record);
        traj.entries.push_back(std::move(e));
    };

    record_step(state);
    record_entry(state);

    std::size_t steps = 0;
    while (state.t < cfg.t_end - 1e-14 * std::max(1.0, cfg.t_end)) {
        const double dt =
            std::min({cfg.dt_max, cfl_limit(cfg, state.v), cfg.t_end - state.t});
        const double t_before = state.t;
        StepResult result = step_unchecked(state, cfg, dt);
        state = std::move(result.state);
        dissipation_total += result.dissipation;
        ++steps;
        const double energy = record_step(state);
        if (!std::isfinite(energy)) throw NonFinite(t_before);
        const bool last = state.t >= cfg.t_end - 1e-14 * std::max(1.0, cfg.t_end);
        if (steps % static_cast<std::size_t>(cfg.output_every) == 0 || last)
            record_entry(state);
    }
    return traj;
}

}  // namespace helns
