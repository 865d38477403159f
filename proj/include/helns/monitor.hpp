#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "helns/diagnostics_record.hpp"
#include "helns/helical.hpp"
#include "helns/solver.hpp"

namespace helns {

// Piecewise-constant a(t), right-continuous, with a -inf sentinel meaning
// "no band threshold" (the projection becomes the identity).
class Schedule {
  public:
    static Schedule constant(double a);
    static Schedule neg_inf();
    static Schedule table(std::vector<std::pair<double, double>> breakpoints);

    double at(double t) const;
    std::string describe() const;

  private:
    std::vector<std::pair<double, double>> pts_;
};

// Fills cond_i..cond_iv, the a-powers, energy/Y/A32 norms and ||w+||^2 from
// the helical coefficients. The field overload additionally computes the
// alias-sensitive products (cross_term, cancel_resid).
DiagnosticsRecord criterion_integrands(const HelicalDecomposition& d, double a);
DiagnosticsRecord criterion_integrands(const VectorField& v, double a);

// Same quantities with the helicity roles reversed (w- instead of w+, band
// reflected). Operation-symmetric to criterion_integrands, so a helicity
// swap maps one onto the other bit-exactly.
DiagnosticsRecord mirror_integrands(const HelicalDecomposition& d, double a);

// (w+ x v, w-), alias-free.
double vorticity_cross_term(const VectorField& v);

// |(w x v, Av) + 2 (w+ x v, w-)| / max(1, |(w x v, Av)|), alias-free.
double cancellation_residual(const VectorField& v);

// Both sides of |(w+ x v, w-)| <= ||w+||_3 ||v||_3 ||w-||_3.
struct HolderPair {
    double lhs;
    double rhs;
};
HolderPair holder_chain_check(const VectorField& v);

// Midpoint residuals of d/dt (Y/2) - 2 (w+ x v, w-) + nu ||A^(3/2)v||^2 = 0
// between consecutive diagnosed entries. O(dt^2) for smooth runs.
std::vector<double> energy_identity_residual(const Trajectory& traj, double nu = 1.0);

enum class EnvelopeForm {
    CondI,   // integrand g = cond_i
    CondII,  // integrand g = c3 ||w+||^2 + c4 cond_ii (probed constants)
};

struct EnvelopeSeries {
    std::vector<double> envelope;
    std::vector<bool> ok;
    bool all_ok = true;
};

EnvelopeSeries gronwall_envelope(const Trajectory& traj, double c1_hat,
                                 EnvelopeForm form = EnvelopeForm::CondI,
                                 double c3 = DiagnosticsRecord::unset,
                                 double c4 = DiagnosticsRecord::unset);
// Same, writing envelope/envelope_ok into the trajectory records.
void apply_gronwall_envelope(Trajectory& traj, double c1_hat,
                             EnvelopeForm form = EnvelopeForm::CondI,
                             double c3 = DiagnosticsRecord::unset,
                             double c4 = DiagnosticsRecord::unset);

struct BandReport {
    double a = 0.0;
    double c5 = 0.0;
    double lhs_3_2 = 0.0;   // band moment of v+ up to a+
    double mid_3_2 = 0.0;   // a+^3 ||v+||^2
    double rhs_3_2 = 0.0;   // c5 a+^3
    double lhs_3_3 = 0.0;   // tail moment of w+
    double rhs_3_3 = 0.0;   // ||A^(1/2) w_a+||^2
    double lhs_3_5 = 0.0;   // ||A^(1/2) w+||^2
    double rhs_3_5 = 0.0;   // c5 a+^3 + ||A^(1/2) w_a+||^2
    double lhs_3_10 = 0.0;  // quintic band moment of v on (a, 0]
    double rhs_3_10 = 0.0;  // c5 |a-|^5
    // (3.11) flag with probed constants; evaluated only when both are given
    // and a < 0.
    bool has_3_11 = false;
    double lhs_3_11 = 0.0;
    double rhs_3_11 = 0.0;
    bool ok_3_11 = true;
};

BandReport band_inequality_suite(const HelicalDecomposition& d, double a, double c5,
                                 double c3 = DiagnosticsRecord::unset,
                                 double c4 = DiagnosticsRecord::unset);
BandReport band_inequality_suite(const VectorField& v, double a, double c5,
                                 double c3 = DiagnosticsRecord::unset,
                                 double c4 = DiagnosticsRecord::unset);
void merge_band_report(DiagnosticsRecord& rec, const BandReport& report);

struct ProbeConfig {
    GridSpec grid;
    std::uint64_t seed = 1;
    int k_max = 4;  // top shell for the random draws
};

struct ConstantProbeReport {
    double c1_hat = 0.0;  // max ||u||_3 / ||A^(1/2)u||_2 over the ensemble
    double c3_hat = 0.0;
    double c4_hat = 0.0;
    double ratio_2_17_min = 0.0;
    double ratio_2_17_median = 0.0;
    double ratio_2_17_p90 = 0.0;
    double ratio_2_17_max = 0.0;
    int size = 0;     // random draws (canonical fields are added on top)
    int skipped = 0;  // degenerate 0/0 ratios excluded
    std::uint64_t seed = 0;
    int n = 0;
    std::string ensemble;
};

ConstantProbeReport probe_constants(const ProbeConfig& cfg, int size);

// Complete diagnostics row for one snapshot.
DiagnosticsRecord full_record(const VectorField& v, double t, double a, double c5);

// simulate() with an observer that fills complete records at the output
// cadence; c5 is the running max of ||v||^2 unless overridden.
Trajectory run_with_diagnostics(const SolverConfig& cfg, const VectorField& v0,
                                const Schedule& schedule,
                                double c5_override = DiagnosticsRecord::unset);

}  // namespace helns
