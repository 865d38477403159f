#pragma once

#include <limits>
#include <memory>
#include <vector>

#include "helns/field.hpp"

namespace helns {

// One time-stamped row of the regularity diagnostics. Band-inequality and
// envelope slots stay NaN until the corresponding pass fills them.
struct DiagnosticsRecord {
    static constexpr double unset = std::numeric_limits<double>::quiet_NaN();

    double t = 0.0;
    double energy = unset;    // ||v||^2
    double grad_sq = unset;   // ||grad v||^2
    double Y = unset;         // ||A^(1/2) v||^2
    double A32_sq = unset;    // ||A^(3/2) v||^2

    double cond_i = unset;    // ||(-Lap)^(1/4) w+||^2
    double cond_ii = unset;   // ||(-Lap)^(3/4) w3+||^2
    double cond_iii = unset;  // ||(-Lap)^(1/4) w_a+||^2
    double cond_iv = unset;   // ||(-Lap)^(3/4) w_a3+||^2

    double a = unset;
    double a_plus_cubed = unset;
    double a_minus_fifth = unset;

    double cross_term = unset;    // (w+ x v, w-)
    double cancel_resid = unset;

    double ineq_3_2_lhs = unset, ineq_3_2_rhs = unset;
    double ineq_3_3_lhs = unset, ineq_3_3_rhs = unset;
    double ineq_3_5_slack = unset;
    double ineq_3_10_lhs = unset, ineq_3_10_rhs = unset;

    double envelope = unset;
    bool envelope_ok = false;

    // Not serialized; feeds the probed form of the envelope integrand.
    double omega_plus_sq = unset;  // ||w+||^2
};

struct TrajectoryEntry {
    double t = 0.0;
    std::shared_ptr<const VectorField> snapshot;  // may be empty
    DiagnosticsRecord record;
};

struct Trajectory {
    // Per accepted step (including t = 0): the minimal energy bookkeeping.
    std::vector<double> step_t;
    std::vector<double> step_energy;
    std::vector<double> step_grad_sq;
    // Cumulative dissipation integral int_0^t ||grad v||^2, accumulated
    // stage-wise at integrator order.
    std::vector<double> step_dissipation;

    // Diagnosed entries at the configured cadence, strictly increasing t.
    std::vector<TrajectoryEntry> entries;
};

}  // namespace helns
