#include "helns/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <random>

#include "helns/csv.hpp"
#include "helns/helical.hpp"
#include "helns/initial_conditions.hpp"
#include "helns/monitor.hpp"
#include "helns/operators.hpp"
#include "helns/snapshot.hpp"
#include "helns/solver.hpp"

namespace helns {

namespace {

struct Checker {
    std::ostream& out;
    int failures = 0;

    void check(const char* name, bool ok, double detail = 0.0) {
        if (ok) {
            out << "ok   " << name << "\n";
        } else {
            ++failures;
            out << "FAIL " << name << " (" << detail << ")\n";
        }
    }
};

VectorField random_field(const GridSpec& g, std::uint64_t seed, double hf = 0.5) {
    return random_divfree(g, -2.0, hf, 1, std::min(6, g.dealias_cutoff()), seed);
}

double rel_diff(const VectorField& a, const VectorField& b) {
    VectorField d = a;
    d -= b;
    const double nb = l2_norm(b);
    return l2_norm(d) / (nb > 0.0 ? nb : 1.0);
}

}  // namespace

int run_verify(std::ostream& out) {
    Checker c{out};
    const GridSpec g16(16), g32(32);

    {  // transform round trip on rough physical data
        PhysicalVectorField p{g16, {}};
        std::mt19937_64 rng(7);
        for (auto& comp : p.comp) {
            comp.resize(g16.size());
            for (auto& v : comp)
                v = 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
        }
        const VectorField f = from_physical(p);
        const PhysicalVectorField q = to_physical(f);
        double worst = 0.0;
        for (int comp = 0; comp < 3; ++comp)
            for (std::size_t i = 0; i < g16.size(); ++i)
                worst = std::max(worst, std::abs(p.comp[comp][i] - q.comp[comp][i]));
        c.check("transform round trip", worst <= 1e-12, worst);
    }

    {  // Leray projection: idempotent, self-adjoint, kills gradients
        const VectorField f = random_field(g16, 11);
        VectorField raw(g16);
        raw.component(0)[g16.flat(1, 1, 0)] = cd{1.0, 0.0};
        raw.component(0)[g16.flat(g16.index_of(-1), g16.index_of(-1), 0)] = cd{1.0, 0.0};
        const VectorField p1 = leray_project(raw);
        const VectorField p2 = leray_project(p1);
        c.check("leray idempotent", rel_diff(p2, p1) <= 1e-12, rel_diff(p2, p1));
        const VectorField h = random_field(g16, 12);
        VectorField rough(g16);
        for (int comp = 0; comp < 3; ++comp) rough.component(comp) = h.component(comp);
        rough.component(2)[g16.flat(2, 0, 0)] += cd{0.3, -0.1};
        rough.component(2)[g16.flat(g16.index_of(-2), 0, 0)] += cd{0.3, 0.1};
        const double lhs = inner_product(leray_project(rough), f);
        const double rhs = inner_product(rough, leray_project(f));
        c.check("leray self-adjoint", std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)),
                std::abs(lhs - rhs));
        const auto [dabs, drel] = divergence_residual(leray_project(rough));
        c.check("leray output divergence-free", drel <= 1e-13, drel);
    }

    {  // curl symmetry and the gradient identity
        double worst = 0.0;
        for (int i = 0; i < 10; ++i) {
            const VectorField f = random_field(g32, 100 + i);
            const VectorField h = random_field(g32, 200 + i);
            const double lhs = inner_product(curl(f), h);
            const double rhs = inner_product(f, curl(h));
            const double scale = l2_norm(f) * l2_norm(h) * (g32.n / 2.0);
            worst = std::max(worst, std::abs(lhs - rhs) / scale);
        }
        c.check("curl symmetry", worst <= 1e-12, worst);

        const VectorField f = random_field(g32, 42);
        const double grad = spectral_norm_sq(f, 2.0);
        const double enst = inner_product(curl(f), curl(f));
        c.check("grad norm equals curl norm", std::abs(grad - enst) <= 1e-12 * grad,
                std::abs(grad - enst) / grad);
    }

    {  // A^2 = S and A^(1/2) vs (-Lap)^(1/4)
        const VectorField f = random_field(g32, 5);
        const VectorField a2 = abs_curl_pow(f, 2.0);
        const VectorField lap = neg_laplacian_pow(f, 1.0);
        c.check("A^2 equals -Laplacian", rel_diff(a2, lap) <= 1e-12, rel_diff(a2, lap));
        const double na = l2_norm(abs_curl_pow(f, 0.5));
        const double nl = l2_norm(neg_laplacian_pow(f, 0.25));
        c.check("A^(1/2) norm equals (-Lap)^(1/4) norm",
                std::abs(na - nl) <= 1e-12 * std::max(na, nl), std::abs(na - nl));
    }

    {  // helical eigenrelation over assorted modes
        double worst = 0.0;
        for (const Wavevector k :
             {Wavevector{0, 0, 1}, {1, 0, 0}, {0, -3, 0}, {2, 1, -1}, {-4, 5, 3}, {7, -2, 6}}) {
            const ModeBasis b = helical_basis(k);
            const double lam = k.norm();
            for (int sgn : {+1, -1}) {
                const auto& h = sgn > 0 ? b.plus : b.minus;
                const cd I{0.0, 1.0};
                const cd r0 = I * (double(k.y) * h[2] - double(k.z) * h[1]) - sgn * lam * h[0];
                const cd r1 = I * (double(k.z) * h[0] - double(k.x) * h[2]) - sgn * lam * h[1];
                const cd r2 = I * (double(k.x) * h[1] - double(k.y) * h[0]) - sgn * lam * h[2];
                worst = std::max(worst, std::abs(r0) + std::abs(r1) + std::abs(r2));
            }
        }
        c.check("helical eigenrelation", worst <= 1e-12, worst);
    }

    {  // decomposition round trip and Parseval
        const VectorField f = random_field(g32, 9);
        const HelicalDecomposition d = decompose(f);
        c.check("decompose round trip", rel_diff(recompose(d), f) <= 1e-12,
                rel_diff(recompose(d), f));
        const auto [ep, em] = helical_energies(d);
        const double e = inner_product(f, f);
        c.check("helical Parseval", std::abs(ep + em - e) <= 1e-12 * e,
                std::abs(ep + em - e) / e);
    }

    {  // projection algebra at coefficient level
        const VectorField f = random_field(g32, 21);
        const HelicalDecomposition d = decompose(f);
        const HelicalDecomposition dp = band_filter(d, SpectralInterval::positive());
        const HelicalDecomposition dm = band_filter(d, SpectralInterval::negative());
        bool complete = true, annihilate = true;
        for (std::size_t i = 0; i < d.plus.size(); ++i) {
            complete = complete && (dp.plus[i] + dm.plus[i] == d.plus[i]) &&
                       (dp.minus[i] + dm.minus[i] == d.minus[i]);
        }
        const HelicalDecomposition pm = band_filter(dm, SpectralInterval::positive());
        for (std::size_t i = 0; i < d.plus.size(); ++i)
            annihilate = annihilate && pm.plus[i] == cd{} && pm.minus[i] == cd{};
        c.check("P+ + P- completeness (exact)", complete);
        c.check("P+ P- annihilation (exact)", annihilate);

        const VectorField fp = band_project(f, SpectralInterval::positive());
        const VectorField fpp = band_project(fp, SpectralInterval::positive());
        c.check("P+ idempotent", rel_diff(fpp, fp) <= 1e-12, rel_diff(fpp, fp));
        const VectorField h = random_field(g32, 22);
        const double sa = inner_product(fp, h) -
                          inner_product(f, band_project(h, SpectralInterval::positive()));
        c.check("P+ self-adjoint", std::abs(sa) <= 1e-12 * std::max(1.0, inner_product(f, f)),
                std::abs(sa));
        const VectorField cfp = curl(fp);
        const VectorField pcf = band_project(curl(f), SpectralInterval::positive());
        c.check("P+ commutes with curl", rel_diff(cfp, pcf) <= 1e-12, rel_diff(cfp, pcf));
        c.check("full band returns f exactly",
                rel_diff(band_project(f, SpectralInterval::all()), f) == 0.0);

        const VectorField lo = band_project(f, SpectralInterval::between(0.0, 2.5));
        const VectorField hi = band_project(f, SpectralInterval::above(2.5));
        VectorField sum = lo;
        sum += hi;
        c.check("band additivity", rel_diff(sum, fp) <= 1e-12, rel_diff(sum, fp));
        c.check("band projection norm non-increasing", l2_norm(lo) <= l2_norm(f) * (1 + 1e-14));
        const double m0 = spectral_moment(f, 0, SpectralInterval::all());
        c.check("moment completeness", std::abs(m0 - inner_product(f, f)) <= 1e-12 * m0,
                std::abs(m0 - inner_product(f, f)) / m0);
    }

    {  // Beltrami: exact curl eigenfield, exact decay
        const VectorField v = abc_flow(g16, 1.0, 1.0, 1.0);
        c.check("abc is curl eigenfield", rel_diff(curl(v), v) <= 1e-13, rel_diff(curl(v), v));
        const auto [ep, em] = helical_energies(decompose(v));
        c.check("abc pure positive helicity (exact)", em == 0.0, em);
        c.check("abc nonlinearity vanishes", l2_norm(nonlinear_rhs(v)) <= 1e-12);
        SolverConfig cfg;
        cfg.t_end = 0.5;
        cfg.dt_max = 0.05;
        const Trajectory traj = simulate(cfg, v);
        const double e_end = traj.step_energy.back();
        const double expect = 3.0 * std::pow(two_pi, 3) * std::exp(-2.0 * traj.step_t.back());
        c.check("abc viscous decay", std::abs(e_end - expect) <= 1e-8 * expect,
                std::abs(e_end - expect) / expect);
    }

    {  // Taylor-Green basics
        const VectorField v = taylor_green(g32);
        const double e = inner_product(v, v);
        const double expect = std::pow(two_pi, 3) / 4.0;
        c.check("taylor-green energy", std::abs(e - expect) <= 1e-12 * expect,
                std::abs(e - expect) / expect);
        const auto [ep, em] = helical_energies(decompose(v));
        c.check("taylor-green zero helicity", std::abs(ep - em) <= 1e-12 * (ep + em),
                std::abs(ep - em));
        const double neutral = inner_product(nonlinear_rhs(v), v);
        c.check("nonlinearity energy-neutral", std::abs(neutral) <= 1e-11 * e,
                std::abs(neutral) / e);
    }

    {  // cancellation identity and Hoelder chain
        double worst = 0.0;
        for (int i = 0; i < 3; ++i) worst = std::max(worst, cancellation_residual(random_field(g32, 300 + i)));
        c.check("cancellation identity", worst <= 1e-8, worst);
        bool holder_ok = true;
        double slack = 0.0;
        for (int i = 0; i < 3; ++i) {
            const auto [lhs, rhs] = holder_chain_check(random_field(g32, 400 + i));
            holder_ok = holder_ok && lhs <= rhs * (1.0 + 1e-10);
            slack = std::max(slack, lhs - rhs);
        }
        c.check("Hoelder chain", holder_ok, slack);
    }

    {  // band inequality suite
        bool ok = true;
        double worst = 0.0;
        for (int i = 0; i < 3; ++i) {
            const VectorField f = random_field(g32, 500 + i);
            const double c5 = inner_product(f, f);
            for (double a : {-1.5, 0.0, 2.0}) {
                const BandReport r = band_inequality_suite(f, a, c5);
                const double tol = 1e-10;
                auto le = [&](double lhs, double rhs) {
                    const double slack = rhs - lhs;
                    const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
                    ok = ok && slack >= -tol * scale;
                    worst = std::min(worst, slack / scale);
                    return slack;
                };
                le(r.lhs_3_2, r.mid_3_2);
                le(r.lhs_3_2, r.rhs_3_2);
                le(r.lhs_3_3, r.rhs_3_3);
                le(r.lhs_3_5, r.rhs_3_5);
                le(r.lhs_3_10, r.rhs_3_10);
                if (a >= 0.0) {
                    const double diff = std::abs(r.lhs_3_3 - r.rhs_3_3);
                    ok = ok && diff <= tol * std::max(1.0, r.rhs_3_3);
                }
            }
        }
        c.check("band inequality suite", ok, worst);
    }

    {  // threshold sentinel reduction and the mirror symmetry
        const VectorField f = random_field(g32, 77, 0.35);
        const HelicalDecomposition d = decompose(f);
        const double neg_inf = -std::numeric_limits<double>::infinity();
        const DiagnosticsRecord r = criterion_integrands(d, neg_inf);
        const double whole = spectral_norm_sq(curl(f), 1.0);
        c.check("a=-inf reduces to whole vorticity",
                std::abs(r.cond_iii - whole) <= 1e-12 * whole,
                std::abs(r.cond_iii - whole) / whole);

        const HelicalDecomposition swapped = helicity_swap(d);
        for (double a : {neg_inf, -1.0, 0.0, 1.5}) {
            const DiagnosticsRecord orig = criterion_integrands(d, a);
            const DiagnosticsRecord mir = mirror_integrands(swapped, a);
            const bool exact = orig.cond_i == mir.cond_i && orig.cond_ii == mir.cond_ii &&
                               orig.cond_iii == mir.cond_iii && orig.cond_iv == mir.cond_iv;
            c.check("mirror diagnostics exact", exact);
        }
    }

    {  // snapshot + csv round trips
        namespace fs = std::filesystem;
        const fs::path dir = fs::temp_directory_path() / "helns_verify";
        fs::create_directories(dir);
        const std::string path = (dir / "snap.bin").string();
        const SolverState s{abc_flow(g16, 1.0, 0.5, 0.25), 0.75};
        write_snapshot(path, s, 1.0);
        const Snapshot raw = read_snapshot_raw(path);
        const std::string path2 = (dir / "snap2.bin").string();
        write_snapshot(path2, raw);
        std::ifstream f1(path, std::ios::binary), f2(path2, std::ios::binary);
        std::string b1((std::istreambuf_iterator<char>(f1)), std::istreambuf_iterator<char>());
        std::string b2((std::istreambuf_iterator<char>(f2)), std::istreambuf_iterator<char>());
        c.check("snapshot round trip bit-exact", b1 == b2 && !b1.empty());
        const LoadedState ls = read_snapshot(path);
        c.check("snapshot state rederivation", !ls.reprojected &&
                rel_diff(ls.state.v, s.v) <= 1e-12 && ls.state.t == s.t);
        fs::remove_all(dir);
    }

    {  // deterministic generator with exact helicity split
        const VectorField a = random_divfree(g32, -2.0, 0.5, 1, 5, 99);
        const VectorField b = random_divfree(g32, -2.0, 0.5, 1, 5, 99);
        c.check("random field deterministic", rel_diff(a, b) == 0.0);
        const auto [ep, em] = helical_energies(decompose(a));
        c.check("helicity split exact", std::abs(ep / (ep + em) - 0.5) <= 1e-12,
                std::abs(ep / (ep + em) - 0.5));
    }

    return c.failures;
}

}  // namespace helns
