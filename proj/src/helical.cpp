#include "helns/helical.hpp"

#include <cmath>

#include "helns/errors.hpp"
#include "helns/operators.hpp"

namespace helns {

namespace {

constexpr double inv_sqrt2 = 0.70710678118654752440084436210485;

double ipow(double x, int p) {
    double r = 1.0;
    for (int i = 0; i < p; ++i) r *= x;
    return r;
}

}  // namespace

ModeBasis helical_basis(const Wavevector& k) {
    if (k.is_zero()) throw ZeroWavevector{};
    // e1 = normalize(k x zhat); on the z axis fall back to k x xhat.
    double e1[3];
    if (k.x == 0 && k.y == 0) {
        // k = (0,0,kz): k x xhat = (0, kz, 0).
        const double s = k.z > 0 ? 1.0 : -1.0;
        e1[0] = 0.0;
        e1[1] = s;
        e1[2] = 0.0;
    } else {
        // k x zhat = (ky, -kx, 0).
        const double norm = std::sqrt(double(k.x) * k.x + double(k.y) * k.y);
        e1[0] = double(k.y) / norm;
        e1[1] = double(-k.x) / norm;
        e1[2] = 0.0;
    }
    const double kn = k.norm();
    const double kh[3] = {double(k.x) / kn, double(k.y) / kn, double(k.z) / kn};
    const double e2[3] = {kh[1] * e1[2] - kh[2] * e1[1], kh[2] * e1[0] - kh[0] * e1[2],
                          kh[0] * e1[1] - kh[1] * e1[0]};
    ModeBasis b;
    for (int c = 0; c < 3; ++c) {
        b.plus[c] = cd{e1[c] * inv_sqrt2, e2[c] * inv_sqrt2};
        b.minus[c] = cd{e1[c] * inv_sqrt2, -e2[c] * inv_sqrt2};
    }
    return b;
}

namespace {

void require_divfree_zero_mean(const VectorField& f) {
    const auto [abs, rel] = divergence_residual(f);
    if (rel > 1e-8)
        throw NotDivergenceFree("divergence residual " + std::to_string(rel) +
                                " above tolerance 1e-8");
    double mean = 0.0;
    for (int c = 0; c < 3; ++c) mean += std::abs(f.component(c)[0]);
    double scale = 0.0;
    for (int c = 0; c < 3; ++c)
        for (const auto& v : f.component(c)) scale = std::max(scale, std::abs(v));
    if (mean > 1e-10 * std::max(1.0, scale))
        throw NotDivergenceFree("mean mode is nonzero; zero-mean convention violated");
}

}  // namespace

HelicalDecomposition decompose(const VectorField& f) {
    require_divfree_zero_mean(f);
    HelicalDecomposition d(f.grid());
    for_each_mode(f.grid(), [&](std::size_t idx, Wavevector k) {
        if (k.is_zero()) return;
        const ModeBasis b = helical_basis(k);
        const cd c0 = f.component(0)[idx];
        const cd c1 = f.component(1)[idx];
        const cd c2 = f.component(2)[idx];
        d.plus[idx] = std::conj(b.plus[0]) * c0 + std::conj(b.plus[1]) * c1 +
                      std::conj(b.plus[2]) * c2;
        d.minus[idx] = std::conj(b.minus[0]) * c0 + std::conj(b.minus[1]) * c1 +
                       std::conj(b.minus[2]) * c2;
    });
    return d;
}

VectorField recompose(const HelicalDecomposition& d) {
    VectorField f(d.grid);
    for_each_mode(d.grid, [&](std::size_t idx, Wavevector k) {
        if (k.is_zero()) return;
        const ModeBasis b = helical_basis(k);
        const cd cp = d.plus[idx];
        const cd cm = d.minus[idx];
        for (int c = 0; c < 3; ++c)
            f.component(c)[idx] = cp * b.plus[c] + cm * b.minus[c];
    });
    f.set_divergence_free(true);
    f.set_zero_mean(true);
    return f;
}

HelicalDecomposition band_filter(const HelicalDecomposition& d, SpectralInterval I) {
    HelicalDecomposition out(d.grid);
    for_each_mode(d.grid, [&](std::size_t idx, Wavevector k) {
        if (k.is_zero()) return;
        const double lambda = k.norm();
        if (I.contains(lambda)) out.plus[idx] = d.plus[idx];
        if (I.contains(-lambda)) out.minus[idx] = d.minus[idx];
    });
    return out;
}

VectorField band_project(const VectorField& f, SpectralInterval I) {
    const HelicalDecomposition d = decompose(f);
    VectorField out(f.grid());
    for_each_mode(f.grid(), [&](std::size_t idx, Wavevector k) {
        if (k.is_zero()) return;
        const double lambda = k.norm();
        const bool keep_plus = I.contains(lambda);
        const bool keep_minus = I.contains(-lambda);
        if (keep_plus && keep_minus) {
            for (int c = 0; c < 3; ++c) out.component(c)[idx] = f.component(c)[idx];
        } else if (keep_plus) {
            const ModeBasis b = helical_basis(k);
            for (int c = 0; c < 3; ++c) out.component(c)[idx] = d.plus[idx] * b.plus[c];
        } else if (keep_minus) {
            const ModeBasis b = helical_basis(k);
            for (int c = 0; c < 3; ++c) out.component(c)[idx] = d.minus[idx] * b.minus[c];
        }
    });
    out.set_divergence_free(true);
    out.set_zero_mean(true);
    return out;
}

HelicalDecomposition abs_curl_pow(const HelicalDecomposition& d, double s) {
    HelicalDecomposition out = d;
    for_each_mode(d.grid, [&](std::size_t idx, Wavevector k) {
        if (k.is_zero()) return;
        const double m = std::pow(k.norm(), s);
        out.plus[idx] *= m;
        out.minus[idx] *= m;
    });
    return out;
}

VectorField abs_curl_pow(const VectorField& f, double s) {
    return recompose(abs_curl_pow(decompose(f), s));
}

double spectral_moment(const HelicalDecomposition& d, int p, SpectralInterval I) {
    double sum = 0.0;
    for_each_mode(d.grid, [&](std::size_t idx, Wavevector k) {
        if (k.is_zero()) return;
        const double lambda = k.norm();
        if (I.contains(lambda)) sum += ipow(lambda, p) * std::norm(d.plus[idx]);
        if (I.contains(-lambda)) sum += ipow(-lambda, p) * std::norm(d.minus[idx]);
    });
    return two_pi * two_pi * two_pi * sum;
}

double spectral_moment(const VectorField& f, int p, SpectralInterval I) {
    return spectral_moment(decompose(f), p, I);
}

std::pair<double, double> helical_energies(const HelicalDecomposition& d) {
    double ep = 0.0, em = 0.0;
    for (std::size_t i = 0; i < d.plus.size(); ++i) {
        ep += std::norm(d.plus[i]);
        em += std::norm(d.minus[i]);
    }
    const double vol = two_pi * two_pi * two_pi;
    return {vol * ep, vol * em};
}

HelicalDecomposition helicity_swap(const HelicalDecomposition& d) {
    HelicalDecomposition out(d.grid);
    out.plus = d.minus;
    out.minus = d.plus;
    return out;
}

VectorField helicity_swap(const VectorField& f) {
    return recompose(helicity_swap(decompose(f)));
}

}  // namespace helns
