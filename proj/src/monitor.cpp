#include "helns/monitor.hpp"

#include <algorithm>
#include <cmath>

#include "helns/errors.hpp"
#include "helns/initial_conditions.hpp"
#include "helns/operators.hpp"

namespace helns {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double ipow(double x, int p) {
    double r = 1.0;
    for (int i = 0; i < p; ++i) r *= x;
    return r;
}

}  // namespace

Schedule Schedule::constant(double a) {
    Schedule s;
    s.pts_ = {{-kInf, a}};
    return s;
}

Schedule Schedule::neg_inf() { return constant(-kInf); }

Schedule Schedule::table(std::vector<std::pair<double, double>> breakpoints) {
    if (breakpoints.empty()) throw ConfigError("schedule table must not be empty");
    for (std::size_t i = 1; i < breakpoints.size(); ++i)
        if (!(breakpoints[i - 1].first < breakpoints[i].first))
            throw ConfigError("schedule breakpoint times must be strictly increasing");
    Schedule s;
    s.pts_ = std::move(breakpoints);
    return s;
}

double Schedule::at(double t) const {
    double value = pts_.front().second;
    for (const auto& [bt, a] : pts_) {
        if (bt <= t) value = a;
        else break;
    }
    return value;
}

std::string Schedule::describe() const {
    if (pts_.size() == 1) {
        if (pts_[0].second == -kInf) return "neg_inf";
        return "const:" + std::to_string(pts_[0].second);
    }
    return "table[" + std::to_string(pts_.size()) + "]";
}

namespace {

// The omega amplitudes per mode: w+ = lam c+, w- = -lam c-. Both diagnostics
// pipelines are written so the helicity swap maps one onto the other with
// identical floating-point operations.
struct IntegrandSums {
    double energy = 0.0, grad = 0.0, y = 0.0, a32 = 0.0;
    double cond_prim = 0.0;   // ||A^(1/2) w(primary)||^2
    double cond_third = 0.0;  // ||(-Lap)^(3/4) w3(primary)||^2
    double cond_band = 0.0;
    double cond_band_third = 0.0;
    double omega_prim_sq = 0.0;
};

template <bool Mirror>
IntegrandSums integrand_sums(const HelicalDecomposition& d, double a) {
    IntegrandSums s;
    for_each_mode(d.grid, [&](std::size_t idx, Wavevector k) {
        if (k.is_zero()) return;
        const double lam = k.norm();
        const double lam3 = lam * lam * lam;
        const ModeBasis b = helical_basis(k);
        const cd cp = d.plus[idx];
        const cd cm = d.minus[idx];
        const double ep = std::norm(cp);
        const double em = std::norm(cm);
        const cd wp = lam * cp;
        const cd wm = -lam * cm;

        s.energy += ep + em;
        s.grad += lam * lam * (ep + em);
        s.y += lam * (ep + em);
        s.a32 += lam3 * (ep + em);

        if constexpr (!Mirror) {
            s.cond_prim += lam * std::norm(wp);
            s.cond_third += lam3 * std::norm(wp * b.plus[2]);
            s.omega_prim_sq += std::norm(wp);
            // Band (a, inf) over signed eigenvalues; +lam first, then -lam.
            if (lam > a) {
                s.cond_band += lam * std::norm(wp);
                s.cond_band_third += lam3 * std::norm(wp * b.plus[2]);
            }
            if (-lam > a) {
                s.cond_band += lam * std::norm(wm);
                s.cond_band_third += lam3 * std::norm(wm * b.minus[2]);
            }
        } else {
            s.cond_prim += lam * std::norm(wm);
            s.cond_third += lam3 * std::norm(wm * b.minus[2]);
            s.omega_prim_sq += std::norm(wm);
            // Reflected band: keep -lambda > a; -lam slot first to mirror
            // the primary pipeline's addition order.
            if (lam > a) {
                s.cond_band += lam * std::norm(wm);
                s.cond_band_third += lam3 * std::norm(wm * b.minus[2]);
            }
            if (-lam > a) {
                s.cond_band += lam * std::norm(wp);
                s.cond_band_third += lam3 * std::norm(wp * b.plus[2]);
            }
        }
    });
    return s;
}

DiagnosticsRecord record_from_sums(const IntegrandSums& s, double a) {
    const double vol = two_pi * two_pi * two_pi;
    DiagnosticsRecord r;
    r.energy = vol * s.energy;
    r.grad_sq = vol * s.grad;
    r.Y = vol * s.y;
    r.A32_sq = vol * s.a32;
    r.cond_i = vol * s.cond_prim;
    r.cond_ii = vol * s.cond_third;
    r.cond_iii = vol * s.cond_band;
    r.cond_iv = vol * s.cond_band_third;
    r.omega_plus_sq = vol * s.omega_prim_sq;
    r.a = a;
    const double ap = std::max(a, 0.0);
    const double am = std::max(-a, 0.0);
    r.a_plus_cubed = ap * ap * ap;
    r.a_minus_fifth = am * am * am * am * am;
    return r;
}

}  // namespace

DiagnosticsRecord criterion_integrands(const HelicalDecomposition& d, double a) {
    return record_from_sums(integrand_sums<false>(d, a), a);
}

DiagnosticsRecord mirror_integrands(const HelicalDecomposition& d, double a) {
    return record_from_sums(integrand_sums<true>(d, a), a);
}

namespace {

// omega's helical amplitudes from v's: (w)± = ±lam c±.
HelicalDecomposition omega_decomposition(const HelicalDecomposition& d) {
    HelicalDecomposition w(d.grid);
    for_each_mode(d.grid, [&](std::size_t idx, Wavevector k) {
        if (k.is_zero()) return;
        const double lam = k.norm();
        w.plus[idx] = lam * d.plus[idx];
        w.minus[idx] = -lam * d.minus[idx];
    });
    return w;
}

VectorField plus_part(const HelicalDecomposition& d) {
    return recompose(band_filter(d, SpectralInterval::positive()));
}
VectorField minus_part(const HelicalDecomposition& d) {
    return recompose(band_filter(d, SpectralInterval::negative()));
}

}  // namespace

namespace {

void fill_product_terms(DiagnosticsRecord& r, const VectorField& v,
                        const HelicalDecomposition& d) {
    const HelicalDecomposition dw = omega_decomposition(d);
    const VectorField wp = plus_part(dw);
    const VectorField wm = minus_part(dw);
    r.cross_term = inner_product(pointwise_cross(wp, v), wm);

    const VectorField av = recompose(abs_curl_pow(d, 1.0));
    const double lhs = inner_product(pointwise_cross(recompose(dw), v), av);
    r.cancel_resid = std::abs(lhs + 2.0 * r.cross_term) / std::max(1.0, std::abs(lhs));
}

}  // namespace

DiagnosticsRecord criterion_integrands(const VectorField& v, double a) {
    const HelicalDecomposition d = decompose(v);
    DiagnosticsRecord r = criterion_integrands(d, a);
    fill_product_terms(r, v, d);
    return r;
}

double vorticity_cross_term(const VectorField& v) {
    const HelicalDecomposition dw = omega_decomposition(decompose(v));
    return inner_product(pointwise_cross(plus_part(dw), v), minus_part(dw));
}

double cancellation_residual(const VectorField& v) {
    const HelicalDecomposition d = decompose(v);
    const HelicalDecomposition dw = omega_decomposition(d);
    const double ct = inner_product(pointwise_cross(plus_part(dw), v), minus_part(dw));
    const VectorField av = recompose(abs_curl_pow(d, 1.0));
    const double lhs = inner_product(pointwise_cross(recompose(dw), v), av);
    return std::abs(lhs + 2.0 * ct) / std::max(1.0, std::abs(lhs));
}

HolderPair holder_chain_check(const VectorField& v) {
    const HelicalDecomposition dw = omega_decomposition(decompose(v));
    const VectorField wp = plus_part(dw);
    const VectorField wm = minus_part(dw);
    const double lhs = std::abs(inner_product(pointwise_cross(wp, v), wm));
    const double rhs = l3_norm(wp) * l3_norm(v) * l3_norm(wm);
    return {lhs, rhs};
}

std::vector<double> energy_identity_residual(const Trajectory& traj, double nu) {
    const auto& e = traj.entries;
    if (e.size() < 2) throw InsufficientRecords{};
    std::vector<double> out;
    out.reserve(e.size() - 1);
    for (std::size_t j = 0; j + 1 < e.size(); ++j) {
        const auto& r0 = e[j].record;
        const auto& r1 = e[j + 1].record;
        const double dt = r1.t - r0.t;
        const double dy = 0.5 * (r1.Y - r0.Y) / dt;
        const double ct = 0.5 * (r0.cross_term + r1.cross_term);
        const double a32 = 0.5 * (r0.A32_sq + r1.A32_sq);
        out.push_back(std::abs(dy - 2.0 * ct + nu * a32));
    }
    return out;
}

EnvelopeSeries gronwall_envelope(const Trajectory& traj, double c1_hat, EnvelopeForm form,
                                 double c3, double c4) {
    if (!(c1_hat > 0.0) || !std::isfinite(c1_hat)) throw MissingProbeConstant{};
    if (form == EnvelopeForm::CondII &&
        (!std::isfinite(c3) || !std::isfinite(c4)))
        throw MissingProbeConstant{};
    const auto& e = traj.entries;
    EnvelopeSeries out;
    if (e.empty()) return out;

    auto g = [&](const DiagnosticsRecord& r) {
        return form == EnvelopeForm::CondI ? r.cond_i
                                           : c3 * r.omega_plus_sq + c4 * r.cond_ii;
    };
    const double rate = 4.0 * ipow(c1_hat, 6);
    const double y0 = e.front().record.Y;
    double integral = 0.0;
    for (std::size_t j = 0; j < e.size(); ++j) {
        if (j > 0) {
            const double dt = e[j].record.t - e[j - 1].record.t;
            integral += 0.5 * dt * (g(e[j - 1].record) + g(e[j].record));
        }
        const double env = y0 * std::exp(rate * integral);
        const bool ok = e[j].record.Y <= env * (1.0 + 1e-12);
        out.envelope.push_back(env);
        out.ok.push_back(ok);
        out.all_ok = out.all_ok && ok;
    }
    return out;
}

void apply_gronwall_envelope(Trajectory& traj, double c1_hat, EnvelopeForm form, double c3,
                             double c4) {
    const EnvelopeSeries s = gronwall_envelope(traj, c1_hat, form, c3, c4);
    for (std::size_t j = 0; j < traj.entries.size(); ++j) {
        traj.entries[j].record.envelope = s.envelope[j];
        traj.entries[j].record.envelope_ok = s.ok[j];
    }
}

namespace {

// (2pi)^3 sum |k|^s (|c+|^2 + |c-|^2) over the decomposition.
double weighted_energy(const HelicalDecomposition& d, int s) {
    double sum = 0.0;
    for_each_mode(d.grid, [&](std::size_t idx, Wavevector k) {
        if (k.is_zero()) return;
        sum += ipow(k.norm(), s) * std::norm(d.plus[idx]);
        sum += ipow(k.norm(), s) * std::norm(d.minus[idx]);
    });
    return two_pi * two_pi * two_pi * sum;
}

}  // namespace

BandReport band_inequality_suite(const HelicalDecomposition& d, double a, double c5,
                                 double c3, double c4) {
    const double energy = weighted_energy(d, 0);
    if (!(c5 >= energy * (1.0 - 1e-12)))
        throw InvalidC5("c5 = " + std::to_string(c5) + " is below ||v||^2 = " +
                        std::to_string(energy));

    const double ap = std::max(a, 0.0);
    const double am = std::max(-a, 0.0);
    const HelicalDecomposition dw = omega_decomposition(d);

    BandReport r;
    r.a = a;
    r.c5 = c5;

    const auto [eplus, eminus] = helical_energies(d);
    r.lhs_3_2 = spectral_moment(d, 3, SpectralInterval::between(0.0, ap));
    r.mid_3_2 = ap * ap * ap * eplus;
    r.rhs_3_2 = c5 * ap * ap * ap;

    r.lhs_3_3 = spectral_moment(dw, 1, SpectralInterval::above(ap));
    r.rhs_3_3 = weighted_energy(band_filter(dw, SpectralInterval::above(a)), 1);

    r.lhs_3_5 = weighted_energy(band_filter(dw, SpectralInterval::positive()), 1);
    r.rhs_3_5 = r.rhs_3_2 + r.rhs_3_3;

    r.lhs_3_10 = weighted_energy(band_filter(d, SpectralInterval::between(a, 0.0)), 5);
    r.rhs_3_10 = c5 * am * am * am * am * am;

    if (a < 0.0 && std::isfinite(c3) && std::isfinite(c4)) {
        const DiagnosticsRecord rec = criterion_integrands(d, a);
        r.has_3_11 = true;
        r.lhs_3_11 = r.lhs_3_5;
        r.rhs_3_11 = c3 * rec.omega_plus_sq + c4 * (rec.cond_iv + c5 * am * am * am * am * am);
        r.ok_3_11 = r.lhs_3_11 <= r.rhs_3_11 * (1.0 + 1e-12);
    }
    return r;
}

BandReport band_inequality_suite(const VectorField& v, double a, double c5, double c3,
                                 double c4) {
    return band_inequality_suite(decompose(v), a, c5, c3, c4);
}

void merge_band_report(DiagnosticsRecord& rec, const BandReport& report) {
    rec.ineq_3_2_lhs = report.lhs_3_2;
    rec.ineq_3_2_rhs = report.rhs_3_2;
    rec.ineq_3_3_lhs = report.lhs_3_3;
    rec.ineq_3_3_rhs = report.rhs_3_3;
    rec.ineq_3_5_slack = report.rhs_3_5 - report.lhs_3_5;
    rec.ineq_3_10_lhs = report.lhs_3_10;
    rec.ineq_3_10_rhs = report.rhs_3_10;
}

ConstantProbeReport probe_constants(const ProbeConfig& cfg, int size) {
    if (size < 1) throw ConfigError("probe ensemble size must be >= 1");

    ConstantProbeReport rep;
    rep.size = size;
    rep.seed = cfg.seed;
    rep.n = cfg.grid.n;
    rep.ensemble = "canonical(abc,taylor_green)+random_divfree[kmax=" +
                   std::to_string(cfg.k_max) + "]";

    std::vector<double> ratios;
    double c1 = 0.0;

    auto visit = [&](const VectorField& u) {
        const double a_half_sq = spectral_norm_sq(u, 1.0);
        if (a_half_sq > 0.0) c1 = std::max(c1, l3_norm(u) / std::sqrt(a_half_sq));
        const DiagnosticsRecord r = criterion_integrands(decompose(u), 0.0);
        const double denom = r.omega_plus_sq + r.cond_ii;
        if (denom > 0.0)
            ratios.push_back(r.cond_i / denom);
        else
            ++rep.skipped;
    };

    visit(abc_flow(cfg.grid, 1.0, 1.0, 1.0));
    visit(taylor_green(cfg.grid));

    const double slopes[] = {-2.0, -1.0, 0.0};
    const double fractions[] = {0.0, 0.25, 0.5, 0.75, 1.0};
    for (int i = 0; i < size; ++i) {
        const double slope = slopes[i % 3];
        const double hf = fractions[i % 5];
        const int kmax = 1 + (i % cfg.k_max);
        visit(random_divfree(cfg.grid, slope, hf, 1, std::max(1, kmax),
                             cfg.seed + static_cast<std::uint64_t>(i)));
    }

    std::sort(ratios.begin(), ratios.end());
    rep.c1_hat = c1;
    if (!ratios.empty()) {
        rep.ratio_2_17_min = ratios.front();
        rep.ratio_2_17_median = ratios[ratios.size() / 2];
        rep.ratio_2_17_p90 = ratios[static_cast<std::size_t>(0.9 * (ratios.size() - 1))];
        rep.ratio_2_17_max = ratios.back();
    }
    rep.c3_hat = rep.ratio_2_17_max;
    rep.c4_hat = rep.ratio_2_17_max;
    return rep;
}

DiagnosticsRecord full_record(const VectorField& v, double t, double a, double c5) {
    const HelicalDecomposition d = decompose(v);
    DiagnosticsRecord r = criterion_integrands(d, a);
    r.t = t;
    fill_product_terms(r, v, d);
    merge_band_report(r, band_inequality_suite(d, a, c5));
    return r;
}

Trajectory run_with_diagnostics(const SolverConfig& cfg, const VectorField& v0,
                                const Schedule& schedule, double c5_override) {
    double running_c5 = 0.0;
    const bool fixed_c5 = std::isfinite(c5_override);
    StepObserver obs = [&](const SolverState& s, DiagnosticsRecord& rec) {
        running_c5 = std::max(running_c5, rec.energy);
        const double c5 = fixed_c5 ? c5_override : running_c5;
        DiagnosticsRecord full = full_record(s.v, s.t, schedule.at(s.t), c5);
        // Keep the solver's own energy bookkeeping.
        full.energy = rec.energy;
        full.grad_sq = rec.grad_sq;
        rec = full;
    };
    return simulate(cfg, v0, obs);
}

}  // namespace helns
