#include "helns/initial_conditions.hpp"

#include <cmath>
#include <random>

#include "helns/errors.hpp"
#include "helns/helical.hpp"

namespace helns {

VectorField abc_flow(const GridSpec& g, double A, double B, double C) {
    VectorField v(g);
    const cd half{0.5, 0.0};
    const cd ihalf{0.0, 0.5};
    auto set = [&](int kx, int ky, int kz, int comp, cd value) {
        v.component(comp)[g.flat(g.index_of(kx), g.index_of(ky), g.index_of(kz))] = value;
    };
    // sin x_j contributes -i/2 at k_j = +1, +i/2 at k_j = -1; cos x_j 1/2 at both.
    set(0, 0, 1, 0, -ihalf * A);
    set(0, 0, -1, 0, ihalf * A);
    set(0, 0, 1, 1, half * A);
    set(0, 0, -1, 1, half * A);

    set(1, 0, 0, 1, -ihalf * B);
    set(-1, 0, 0, 1, ihalf * B);
    set(1, 0, 0, 2, half * B);
    set(-1, 0, 0, 2, half * B);

    set(0, 1, 0, 2, -ihalf * C);
    set(0, -1, 0, 2, ihalf * C);
    set(0, 1, 0, 0, half * C);
    set(0, -1, 0, 0, half * C);

    v.set_divergence_free(true);
    v.set_zero_mean(true);
    return v;
}

VectorField taylor_green(const GridSpec& g) {
    VectorField v(g);
    for (int sx : {-1, 1})
        for (int sy : {-1, 1})
            for (int sz : {-1, 1}) {
                const std::size_t idx =
                    g.flat(g.index_of(sx), g.index_of(sy), g.index_of(sz));
                v.component(0)[idx] = cd{0.0, -sx / 8.0};
                v.component(1)[idx] = cd{0.0, sy / 8.0};
            }
    v.set_divergence_free(true);
    v.set_zero_mean(true);
    return v;
}

namespace {

// Explicit Box-Muller on mt19937_64 output keeps the stream identical across
// standard libraries.
struct GaussianSource {
    std::mt19937_64 rng;
    explicit GaussianSource(std::uint64_t seed) : rng(seed) {}

    double uniform() {
        // 53-bit mantissa in (0, 1].
        return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
    }
    cd complex_normal() {
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        return cd{r * std::cos(two_pi * u2), r * std::sin(two_pi * u2)};
    }
};

bool canonical_half(const Wavevector& k) {
    if (k.z != 0) return k.z > 0;
    if (k.y != 0) return k.y > 0;
    return k.x > 0;
}

}  // namespace

VectorField random_divfree(const GridSpec& g, double slope, double helicity_fraction,
                           int k_min, int k_max, std::uint64_t seed) {
    if (k_min < 1) throw EmptyShellRange("k_min must be >= 1");
    if (helicity_fraction < 0.0 || helicity_fraction > 1.0)
        throw ConfigError("helicity_fraction must lie in [0,1]");
    const int kcap = g.n / 2 - 1;

    HelicalDecomposition d(g);
    GaussianSource gauss(seed);
    double raw_plus = 0.0, raw_minus = 0.0;
    std::size_t populated = 0;

    const std::int64_t lo2 = static_cast<std::int64_t>(k_min) * k_min;
    const std::int64_t hi2 = static_cast<std::int64_t>(k_max) * k_max;
    for_each_mode(g, [&](std::size_t idx, Wavevector k) {
        if (!canonical_half(k)) return;
        if (std::abs(k.x) > kcap || std::abs(k.y) > kcap || std::abs(k.z) > kcap) return;
        const std::int64_t n2 = k.norm2();
        if (n2 < lo2 || n2 > hi2) return;
        const double amp = std::pow(k.norm(), 0.5 * slope);
        const cd cp = amp * gauss.complex_normal();
        const cd cm = amp * gauss.complex_normal();
        const std::size_t nidx = g.flat(g.index_of(-k.x), g.index_of(-k.y), g.index_of(-k.z));
        d.plus[idx] = cp;
        d.minus[idx] = cm;
        // Reality: c±(-k) = -conj(c±(k)).
        d.plus[nidx] = -std::conj(cp);
        d.minus[nidx] = -std::conj(cm);
        raw_plus += 2.0 * std::norm(cp);
        raw_minus += 2.0 * std::norm(cm);
        ++populated;
    });
    if (populated == 0)
        throw EmptyShellRange("no lattice modes with " + std::to_string(k_min) +
                              " <= |k| <= " + std::to_string(k_max));

    // Scale each family so the unit-energy split is exact.
    const double vol = two_pi * two_pi * two_pi;
    const double sp = helicity_fraction > 0.0
                          ? std::sqrt(helicity_fraction / (vol * raw_plus))
                          : 0.0;
    const double sm = helicity_fraction < 1.0
                          ? std::sqrt((1.0 - helicity_fraction) / (vol * raw_minus))
                          : 0.0;
    for (std::size_t i = 0; i < d.plus.size(); ++i) {
        d.plus[i] *= sp;
        d.minus[i] *= sm;
    }
    return recompose(d);
}

}  // namespace helns
