#pragma once

#include <functional>

#include "helns/diagnostics_record.hpp"
#include "helns/operators.hpp"

namespace helns {

struct SolverConfig {
    double nu = 1.0;
    double t_end = 1.0;
    double dt_max = 0.01;
    double cfl = 0.5;
    int output_every = 1;
    bool keep_snapshots = false;  // retain a field copy on each entry

    void validate() const;
};

struct SolverState {
    VectorField v;
    double t = 0.0;
};

// -P(w x v): rotational-form nonlinearity; the Bernoulli gradient is
// annihilated by the projection. Solver path uses the two-thirds rule.
VectorField nonlinear_rhs(const VectorField& v,
                          DealiasMode mode = DealiasMode::TwoThirdsTruncate);

// One integrating-factor RK4 step; the viscous factor exp(-nu |k|^2 dt) is
// applied exactly. Validates the CFL bound dt <= cfl*dx/max|v| and dt_max.
SolverState step(const SolverState& state, const SolverConfig& cfg, double dt);

// Called on each diagnosed entry; may enrich the freshly filled record.
using StepObserver = std::function<void(const SolverState&, DiagnosticsRecord&)>;

// Advance to t_end with adaptive dt. Energy and enstrophy are recorded at
// every step; entries (with observer enrichment) at the output_every cadence
// plus the initial and final states. Throws NonFinite on discrete blow-up.
Trajectory simulate(const SolverConfig& cfg, const VectorField& v0,
                    const StepObserver& observer = {});

}  // namespace helns
