#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "helns/errors.hpp"
#include "test_util.hpp"

using namespace helns;
using namespace helns::testing;

namespace {
const double vol = two_pi * two_pi * two_pi;
const double inf = std::numeric_limits<double>::infinity();

cd cross_eig_residual(const Wavevector& k, const std::array<cd, 3>& h, double lambda, int c) {
    const cd I{0.0, 1.0};
    switch (c) {
        case 0: return I * (double(k.y) * h[2] - double(k.z) * h[1]) - lambda * h[0];
        case 1: return I * (double(k.z) * h[0] - double(k.x) * h[2]) - lambda * h[1];
        default: return I * (double(k.x) * h[1] - double(k.y) * h[0]) - lambda * h[2];
    }
}
}  // namespace

TEST_CASE("frame rule at k = (0,0,1)") {
    const ModeBasis b = helical_basis({0, 0, 1});
    // Hand oracle: e1 = (0,1,0), e2 = (-1,0,0), h+ = (-i,1,0)/sqrt(2).
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(b.plus[0] - cd{0.0, -s}) <= 2e-16);
    CHECK(std::abs(b.plus[1] - cd{s, 0.0}) <= 2e-16);
    CHECK(std::abs(b.plus[2]) == 0.0);
    for (int c = 0; c < 3; ++c) CHECK(std::abs(cross_eig_residual({0, 0, 1}, b.plus, 1.0, c)) <= 1e-16);
}

TEST_CASE("helical basis eigenrelation, orthonormality and reality frame") {
    const Wavevector ks[] = {{0, 0, 1}, {0, 0, -2}, {1, 0, 0}, {0, 3, 0},
                             {1, 1, 0}, {2, -1, 3}, {-5, 2, -4}, {7, 7, 7}};
    for (const auto& k : ks) {
        const ModeBasis b = helical_basis(k);
        const double lam = k.norm();
        for (int c = 0; c < 3; ++c) {
            CHECK(std::abs(cross_eig_residual(k, b.plus, lam, c)) <= 1e-12 * lam);
            CHECK(std::abs(cross_eig_residual(k, b.minus, -lam, c)) <= 1e-12 * lam);
        }
        // Transversality and Hermitian orthonormality.
        cd kdot_p = double(k.x) * b.plus[0] + double(k.y) * b.plus[1] + double(k.z) * b.plus[2];
        CHECK(std::abs(kdot_p) <= 1e-14 * lam);
        cd pp{}, pm{};
        for (int c = 0; c < 3; ++c) {
            pp += std::conj(b.plus[c]) * b.plus[c];
            pm += std::conj(b.plus[c]) * b.minus[c];
        }
        CHECK(std::abs(pp - cd{1.0, 0.0}) <= 1e-14);
        CHECK(std::abs(pm) <= 1e-14);
        // Deterministic frame: h±(-k) = -h∓(k), conj(h±) = h∓.
        const ModeBasis bn = helical_basis(-k);
        for (int c = 0; c < 3; ++c) {
            CHECK(std::abs(bn.plus[c] + b.minus[c]) <= 1e-16);
            CHECK(std::abs(bn.minus[c] + b.plus[c]) <= 1e-16);
            CHECK(std::abs(std::conj(b.plus[c]) - b.minus[c]) <= 1e-16);
        }
    }
    CHECK_THROWS_AS(helical_basis({0, 0, 0}), ZeroWavevector);
}

TEST_CASE("eigenvalue scales with the wavevector") {
    // A single helical mode transplanted from k to xi*k has eigenvalue xi*lambda.
    const GridSpec g(32);
    for (int xi : {2, 3}) {
        const VectorField base = single_helical_mode(g, {1, 2, 0}, true);
        const VectorField moved = single_helical_mode(g, {xi, 2 * xi, 0}, true);
        const double lam_base = inner_product(curl(base), base) / inner_product(base, base);
        const double lam_moved = inner_product(curl(moved), moved) / inner_product(moved, moved);
        CHECK(std::abs(lam_moved - xi * lam_base) <= 1e-12 * lam_moved);
    }
    // |k| = 2 axis mode has eigenvalues +-2.
    const VectorField p2 = single_helical_mode(GridSpec(16), {2, 0, 0}, true);
    CHECK(rel_diff(curl(p2), 2.0 * p2) <= 1e-14);
    const VectorField m2 = single_helical_mode(GridSpec(16), {2, 0, 0}, false);
    CHECK(rel_diff(curl(m2), -2.0 * m2) <= 1e-14);
}

TEST_CASE("decompose and recompose") {
    const GridSpec g(32);

    SUBCASE("ABC flow is pure positive helicity, exactly") {
        const auto d = decompose(abc_flow(g, 1.0, 1.0, 1.0));
        double minus_mass = 0.0;
        for (const auto& c : d.minus) minus_mass += std::norm(c);
        CHECK(minus_mass == 0.0);
    }

    SUBCASE("pure h- mode lands entirely in c-") {
        const VectorField f = single_helical_mode(g, {2, 1, 0}, false);
        const auto d = decompose(f);
        const auto [ep, em] = helical_energies(d);
        CHECK(ep <= 1e-30);
        CHECK(std::abs(em - inner_product(f, f)) <= 1e-14);
    }

    SUBCASE("round trip is the identity on random divergence-free fields") {
        for (int i = 0; i < 5; ++i) {
            const VectorField f = random_field(g, 900 + i);
            CHECK(rel_diff(recompose(decompose(f)), f) <= 1e-12);
        }
    }

    SUBCASE("Parseval in helical coordinates") {
        const VectorField f = random_field(g, 42);
        const auto [ep, em] = helical_energies(decompose(f));
        CHECK(std::abs(ep + em - inner_product(f, f)) <= 1e-12 * inner_product(f, f));
    }

    SUBCASE("rejects fields outside the class") {
        VectorField bad(g);
        bad.component(0)[g.flat(1, 0, 0)] = cd{1.0, 0.0};  // longitudinal
        bad.component(0)[g.flat(g.index_of(-1), 0, 0)] = cd{1.0, 0.0};
        CHECK_THROWS_AS(decompose(bad), NotDivergenceFree);
        VectorField mean(g);
        mean.component(1)[0] = cd{1.0, 0.0};
        CHECK_THROWS_AS(decompose(mean), NotDivergenceFree);
    }
}

TEST_CASE("band projection") {
    const GridSpec g(32);
    const VectorField abc = abc_flow(g, 1.0, 1.0, 1.0);

    SUBCASE("ABC: positive band keeps it, negative band kills it") {
        CHECK(rel_diff(band_project(abc, SpectralInterval::positive()), abc) <= 1e-14);
        CHECK(l2_norm(band_project(abc, SpectralInterval::negative())) == 0.0);
    }

    SUBCASE("threshold above/below the eigenvalue") {
        CHECK(l2_norm(band_project(abc, SpectralInterval::above(1.5))) == 0.0);
        CHECK(rel_diff(band_project(abc, SpectralInterval::above(0.5)), abc) <= 1e-14);
    }

    SUBCASE("completeness and annihilation at coefficient level are exact") {
        const VectorField f = random_field(g, 11);
        const auto d = decompose(f);
        const auto dp = band_filter(d, SpectralInterval::positive());
        const auto dm = band_filter(d, SpectralInterval::negative());
        for (std::size_t i = 0; i < d.plus.size(); ++i) {
            CHECK(dp.plus[i] + dm.plus[i] == d.plus[i]);
            CHECK(dp.minus[i] + dm.minus[i] == d.minus[i]);
        }
        const auto both = band_filter(dm, SpectralInterval::positive());
        for (std::size_t i = 0; i < d.plus.size(); ++i) {
            CHECK(both.plus[i] == cd{});
            CHECK(both.minus[i] == cd{});
        }
    }

    SUBCASE("field-level algebra") {
        const VectorField f = random_field(g, 12);
        const VectorField fp = band_project(f, SpectralInterval::positive());
        const VectorField fm = band_project(f, SpectralInterval::negative());
        VectorField sum = fp;
        sum += fm;
        CHECK(rel_diff(sum, f) <= 1e-13);
        CHECK(l2_norm(band_project(fm, SpectralInterval::positive())) <= 1e-13 * l2_norm(f));
        CHECK(rel_diff(band_project(fp, SpectralInterval::positive()), fp) <= 1e-13);
        const VectorField h = random_field(g, 13);
        const double sa = inner_product(fp, h) -
                          inner_product(f, band_project(h, SpectralInterval::positive()));
        CHECK(std::abs(sa) <= 1e-12 * std::max(1.0, std::abs(inner_product(fp, h))));
    }

    SUBCASE("full band is bit-exact; disjoint bands add") {
        const VectorField f = random_field(g, 14);
        const VectorField id = band_project(f, SpectralInterval::all());
        for (int c = 0; c < 3; ++c)
            for (std::size_t i = 0; i < g.size(); ++i)
                CHECK(id.component(c)[i] == f.component(c)[i]);

        VectorField parts = band_project(f, SpectralInterval::between(-2.0, 1.0));
        parts += band_project(f, SpectralInterval::above(1.0));
        const VectorField whole = band_project(f, SpectralInterval::above(-2.0));
        CHECK(rel_diff(parts, whole) <= 1e-13);
    }

    SUBCASE("norm non-increasing") {
        const VectorField f = random_field(g, 15);
        for (double lo : {-3.0, 0.0, 2.0})
            CHECK(l2_norm(band_project(f, SpectralInterval::between(lo, lo + 2.5))) <=
                  l2_norm(f) * (1.0 + 1e-14));
    }

    SUBCASE("projections commute with curl; w+ = A v+") {
        const VectorField f = random_field(g, 16);
        const VectorField a = curl(band_project(f, SpectralInterval::positive()));
        const VectorField b = band_project(curl(f), SpectralInterval::positive());
        CHECK(rel_diff(a, b) <= 1e-12);
        const VectorField av = abs_curl_pow(band_project(f, SpectralInterval::positive()), 1.0);
        CHECK(rel_diff(a, av) <= 1e-12);
        // w- = -A v-.
        const VectorField wm = curl(band_project(f, SpectralInterval::negative()));
        VectorField avm = abs_curl_pow(band_project(f, SpectralInterval::negative()), 1.0);
        avm *= -1.0;
        CHECK(rel_diff(wm, avm) <= 1e-12);
    }
}

TEST_CASE("abs curl powers") {
    const GridSpec g(32);
    const VectorField abc = abc_flow(g, 1.0, 1.0, 1.0);
    CHECK(rel_diff(abs_curl_pow(abc, 1.0), abc) <= 1e-14);  // A v = v on the unit shell

    const VectorField f = random_field(g, 21);
    CHECK(rel_diff(abs_curl_pow(f, 2.0), neg_laplacian_pow(f, 1.0)) <= 1e-12);

    const double na = l2_norm(abs_curl_pow(f, 0.5));
    const double nl = l2_norm(neg_laplacian_pow(f, 0.25));
    CHECK(std::abs(na - nl) <= 1e-12 * na);

    // Single positive mode at |k| = 4: A^(1/2) scales by 2.
    const VectorField m = single_helical_mode(g, {4, 0, 0}, true);
    CHECK(rel_diff(abs_curl_pow(m, 0.5), 2.0 * m) <= 1e-13);
}

TEST_CASE("spectral moments") {
    const GridSpec g(32);

    SUBCASE("single positive mode |k| = 2") {
        const VectorField f = single_helical_mode(g, {2, 0, 0}, true);
        CHECK(std::abs(spectral_moment(f, 1, SpectralInterval::positive()) - 2.0) <= 1e-12);
        CHECK(std::abs(spectral_moment(f, 3, SpectralInterval::positive()) - 8.0) <= 1e-12);
        CHECK(std::abs(spectral_moment(f, 1, SpectralInterval::negative())) <= 1e-24);
    }

    SUBCASE("p = 0 over the whole axis is the energy") {
        const VectorField f = random_field(g, 31);
        const double m0 = spectral_moment(f, 0, SpectralInterval::all());
        CHECK(std::abs(m0 - inner_product(f, f)) <= 1e-12 * m0);
    }

    SUBCASE("pure negative-helicity field has an empty positive band") {
        const VectorField f = random_divfree(g, -2.0, 0.0, 1, 5, 77);
        // Exact zero at coefficient level; the field round trip leaves only
        // squared-epsilon leakage.
        HelicalDecomposition d = decompose(f);
        for (auto& cp : d.plus) cp = cd{};
        CHECK(spectral_moment(d, 1, SpectralInterval::positive()) == 0.0);
        CHECK(std::abs(spectral_moment(f, 1, SpectralInterval::positive())) <= 1e-24);
    }

    SUBCASE("signed odd moments") {
        const VectorField f = single_helical_mode(g, {0, 3, 0}, false);
        CHECK(std::abs(spectral_moment(f, 1, SpectralInterval::all()) + 3.0) <= 1e-12);
        CHECK(std::abs(spectral_moment(f, 5, SpectralInterval::between(-3.5, 0.0)) +
                       243.0) <= 1e-10);
    }
}

TEST_CASE("helicity swap is an involution and mirrors energies") {
    const GridSpec g(32);
    const VectorField f = random_field(g, 88, 0.3);
    const auto d = decompose(f);
    const auto s = helicity_swap(d);
    const auto [ep, em] = helical_energies(d);
    const auto [sp, sm] = helical_energies(s);
    CHECK(ep == sm);
    CHECK(em == sp);
    const auto ss = helicity_swap(s);
    for (std::size_t i = 0; i < d.plus.size(); ++i) {
        CHECK(ss.plus[i] == d.plus[i]);
        CHECK(ss.minus[i] == d.minus[i]);
    }
    const VectorField swapped = helicity_swap(f);
    CHECK(std::abs(inner_product(swapped, swapped) - inner_product(f, f)) <=
          1e-12 * inner_product(f, f));
}

TEST_CASE("interval conventions") {
    SpectralInterval I = SpectralInterval::between(1.0, 2.0);
    CHECK(!I.contains(1.0));  // lo is open
    CHECK(I.contains(2.0));   // hi is closed
    CHECK(SpectralInterval::above(-inf).contains(-1e300));
    CHECK(SpectralInterval::all().contains(0.0));
    CHECK(!SpectralInterval::positive().contains(0.0));
    CHECK(SpectralInterval::negative().contains(0.0));
}
