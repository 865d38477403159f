#include "helns/operators.hpp"

#include <algorithm>
#include <cmath>

#include "helns/errors.hpp"
#include "helns/fft.hpp"

namespace helns {

void VectorField::require_same_grid(const VectorField& o) const {
    if (!(grid_ == o.grid_)) throw GridMismatch{};
}

PhysicalVectorField to_physical(const VectorField& f) {
    PhysicalVectorField p{f.grid(), {}};
    for (int c = 0; c < 3; ++c) fft::inverse(f.grid(), f.component(c), p.comp[c]);
    return p;
}

VectorField from_physical(const PhysicalVectorField& p) {
    VectorField f(p.grid);
    for (int c = 0; c < 3; ++c) fft::forward(p.grid, p.comp[c], f.component(c));
    return f;
}

VectorField leray_project(const VectorField& f) {
    VectorField out = f;
    auto& cx = out.component(0);
    auto& cy = out.component(1);
    auto& cz = out.component(2);
    for_each_mode(f.grid(), [&](std::size_t idx, Wavevector k) {
        if (k.is_zero()) {
            cx[idx] = cy[idx] = cz[idx] = cd{0.0, 0.0};
            return;
        }
        const cd kdotc = double(k.x) * cx[idx] + double(k.y) * cy[idx] + double(k.z) * cz[idx];
        const cd s = kdotc / static_cast<double>(k.norm2());
        cx[idx] -= double(k.x) * s;
        cy[idx] -= double(k.y) * s;
        cz[idx] -= double(k.z) * s;
    });
    out.set_divergence_free(true);
    out.set_zero_mean(true);
    return out;
}

VectorField curl(const VectorField& f) {
    VectorField out(f.grid());
    const auto& ax = f.component(0);
    const auto& ay = f.component(1);
    const auto& az = f.component(2);
    auto& cx = out.component(0);
    auto& cy = out.component(1);
    auto& cz = out.component(2);
    const cd I{0.0, 1.0};
    for_each_mode(f.grid(), [&](std::size_t idx, Wavevector k) {
        cx[idx] = I * (double(k.y) * az[idx] - double(k.z) * ay[idx]);
        cy[idx] = I * (double(k.z) * ax[idx] - double(k.x) * az[idx]);
        cz[idx] = I * (double(k.x) * ay[idx] - double(k.y) * ax[idx]);
    });
    out.set_divergence_free(true);
    out.set_zero_mean(true);
    return out;
}

namespace {

bool has_mean_mode(const std::vector<cd>& c) { return c[0] != cd{0.0, 0.0}; }

}  // namespace

VectorField neg_laplacian_pow(const VectorField& f, double alpha) {
    if (alpha < 0.0)
        for (int c = 0; c < 3; ++c)
            if (has_mean_mode(f.component(c))) throw NegativePowerOnMeanMode{};
    VectorField out = f;
    for_each_mode(f.grid(), [&](std::size_t idx, Wavevector k) {
        const double m = k.is_zero() ? 0.0 : std::pow(static_cast<double>(k.norm2()), alpha);
        for (int c = 0; c < 3; ++c) out.component(c)[idx] *= m;
    });
    out.set_zero_mean(true);
    return out;
}

ScalarField neg_laplacian_pow(const ScalarField& f, double alpha) {
    if (alpha < 0.0 && has_mean_mode(f.coeffs())) throw NegativePowerOnMeanMode{};
    ScalarField out = f;
    for_each_mode(f.grid(), [&](std::size_t idx, Wavevector k) {
        const double m = k.is_zero() ? 0.0 : std::pow(static_cast<double>(k.norm2()), alpha);
        out.coeffs()[idx] *= m;
    });
    return out;
}

double inner_product(const VectorField& f, const VectorField& g) {
    f.require_same_grid(g);
    double sum = 0.0;
    for (int c = 0; c < 3; ++c) {
        const auto& a = f.component(c);
        const auto& b = g.component(c);
        for (std::size_t i = 0; i < a.size(); ++i)
            sum += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    }
    const double vol = two_pi * two_pi * two_pi;
    return vol * sum;
}

double inner_product(const ScalarField& f, const ScalarField& g) {
    if (!(f.grid() == g.grid())) throw GridMismatch{};
    double sum = 0.0;
    const auto& a = f.coeffs();
    const auto& b = g.coeffs();
    for (std::size_t i = 0; i < a.size(); ++i)
        sum += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    return two_pi * two_pi * two_pi * sum;
}

double l2_norm(const VectorField& f) { return std::sqrt(inner_product(f, f)); }
double l2_norm(const ScalarField& f) { return std::sqrt(inner_product(f, f)); }

double l3_norm(const VectorField& f) {
    const auto p = to_physical(f);
    double sum = 0.0;
    for (std::size_t i = 0; i < f.grid().size(); ++i) {
        const double m2 = p.comp[0][i] * p.comp[0][i] + p.comp[1][i] * p.comp[1][i] +
                          p.comp[2][i] * p.comp[2][i];
        sum += m2 * std::sqrt(m2);
    }
    return std::cbrt(sum * f.grid().cell_volume());
}

double l3_norm(const ScalarField& f) {
    std::vector<double> p;
    fft::inverse(f.grid(), f.coeffs(), p);
    double sum = 0.0;
    for (double v : p) sum += std::abs(v) * v * v;
    return std::cbrt(sum * f.grid().cell_volume());
}

namespace {

// Copy native-lattice coefficients into the zero-padded m^3 cube. Native
// Nyquist planes are dropped; every field this artifact produces is
// Nyquist-free.
void embed_padded(const GridSpec& g, const std::vector<cd>& in, int m, std::vector<cd>& out) {
    out.assign(static_cast<std::size_t>(m) * m * m, cd{0.0, 0.0});
    const int kmax = g.n / 2 - 1;
    auto pad_index = [m](int k) { return k >= 0 ? k : k + m; };
    for (int kz = -kmax; kz <= kmax; ++kz)
        for (int ky = -kmax; ky <= kmax; ++ky)
            for (int kx = -kmax; kx <= kmax; ++kx) {
                const std::size_t src = g.flat(g.index_of(kx), g.index_of(ky), g.index_of(kz));
                const std::size_t dst =
                    static_cast<std::size_t>(pad_index(kx)) +
                    static_cast<std::size_t>(m) *
                        (static_cast<std::size_t>(pad_index(ky)) +
                         static_cast<std::size_t>(m) * pad_index(kz));
                out[dst] = in[src];
            }
}

void extract_padded(const GridSpec& g, const std::vector<cd>& in, int m, std::vector<cd>& out) {
    out.assign(g.size(), cd{0.0, 0.0});
    const int kmax = g.n / 2 - 1;
    auto pad_index = [m](int k) { return k >= 0 ? k : k + m; };
    for (int kz = -kmax; kz <= kmax; ++kz)
        for (int ky = -kmax; ky <= kmax; ++ky)
            for (int kx = -kmax; kx <= kmax; ++kx) {
                const std::size_t src =
                    static_cast<std::size_t>(pad_index(kx)) +
                    static_cast<std::size_t>(m) *
                        (static_cast<std::size_t>(pad_index(ky)) +
                         static_cast<std::size_t>(m) * pad_index(kz));
                const std::size_t dst = g.flat(g.index_of(kx), g.index_of(ky), g.index_of(kz));
                out[dst] = in[src];
            }
}

VectorField cross_padded(const VectorField& f, const VectorField& g) {
    const GridSpec& grid = f.grid();
    const int m = 3 * grid.n / 2;
    const std::size_t msize = static_cast<std::size_t>(m) * m * m;

    std::array<std::vector<cd>, 3> a, b;
    for (int c = 0; c < 3; ++c) {
        embed_padded(grid, f.component(c), m, a[c]);
        fft::backward_c2c(m, a[c].data());
        embed_padded(grid, g.component(c), m, b[c]);
        fft::backward_c2c(m, b[c].data());
    }
    // Physical-space cross product on the padded grid; imaginary parts are
    // rounding noise for conjugate-symmetric inputs and multiply through
    // harmlessly.
    std::array<std::vector<cd>, 3> prod;
    for (auto& p : prod) p.resize(msize);
    for (std::size_t i = 0; i < msize; ++i) {
        const double a1 = a[0][i].real(), a2 = a[1][i].real(), a3 = a[2][i].real();
        const double b1 = b[0][i].real(), b2 = b[1][i].real(), b3 = b[2][i].real();
        prod[0][i] = cd{a2 * b3 - a3 * b2, 0.0};
        prod[1][i] = cd{a3 * b1 - a1 * b3, 0.0};
        prod[2][i] = cd{a1 * b2 - a2 * b1, 0.0};
    }
    VectorField out(grid);
    const double scale = 1.0 / static_cast<double>(msize);
    for (int c = 0; c < 3; ++c) {
        fft::forward_c2c(m, prod[c].data());
        for (auto& v : prod[c]) v *= scale;
        extract_padded(grid, prod[c], m, out.component(c));
    }
    return out;
}

VectorField cross_truncated(const VectorField& f, const VectorField& g) {
    const GridSpec& grid = f.grid();
    VectorField ft = f, gt = g;
    truncate_modes(ft);
    truncate_modes(gt);
    const auto pa = to_physical(ft);
    const auto pb = to_physical(gt);
    PhysicalVectorField prod{grid, {}};
    for (auto& c : prod.comp) c.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double a1 = pa.comp[0][i], a2 = pa.comp[1][i], a3 = pa.comp[2][i];
        const double b1 = pb.comp[0][i], b2 = pb.comp[1][i], b3 = pb.comp[2][i];
        prod.comp[0][i] = a2 * b3 - a3 * b2;
        prod.comp[1][i] = a3 * b1 - a1 * b3;
        prod.comp[2][i] = a1 * b2 - a2 * b1;
    }
    VectorField out = from_physical(prod);
    truncate_modes(out);
    return out;
}

}  // namespace

VectorField pointwise_cross(const VectorField& f, const VectorField& g, DealiasMode mode) {
    f.require_same_grid(g);
    VectorField out = mode == DealiasMode::ThreeHalvesPad ? cross_padded(f, g)
                                                          : cross_truncated(f, g);
    out.set_divergence_free(false);
    out.set_zero_mean(false);
    return out;
}

void truncate_modes(VectorField& f, int kc) {
    if (kc < 0) kc = f.grid().dealias_cutoff();
    for_each_mode(f.grid(), [&](std::size_t idx, Wavevector k) {
        if (std::abs(k.x) > kc || std::abs(k.y) > kc || std::abs(k.z) > kc)
            for (int c = 0; c < 3; ++c) f.component(c)[idx] = cd{0.0, 0.0};
    });
}

ScalarField component(const VectorField& f, int i) {
    ScalarField out(f.grid());
    out.coeffs() = f.component(i);
    return out;
}

double max_pointwise_speed(const VectorField& f) {
    const auto p = to_physical(f);
    double vmax2 = 0.0;
    for (std::size_t i = 0; i < f.grid().size(); ++i) {
        const double m2 = p.comp[0][i] * p.comp[0][i] + p.comp[1][i] * p.comp[1][i] +
                          p.comp[2][i] * p.comp[2][i];
        vmax2 = std::max(vmax2, m2);
    }
    return std::sqrt(vmax2);
}

std::pair<double, double> divergence_residual(const VectorField& f) {
    double div2 = 0.0, grad2 = 0.0;
    for_each_mode(f.grid(), [&](std::size_t idx, Wavevector k) {
        const cd kc = double(k.x) * f.component(0)[idx] + double(k.y) * f.component(1)[idx] +
                      double(k.z) * f.component(2)[idx];
        div2 += std::norm(kc);
        for (int c = 0; c < 3; ++c) grad2 += k.norm2() * std::norm(f.component(c)[idx]);
    });
    const double abs = std::sqrt(div2);
    const double rel = grad2 > 0.0 ? abs / std::sqrt(grad2) : 0.0;
    return {abs, rel};
}

bool is_conjugate_symmetric(const VectorField& f, double tol) {
    const GridSpec& g = f.grid();
    double worst = 0.0, scale = 0.0;
    for_each_mode(g, [&](std::size_t idx, Wavevector k) {
        // Skip Nyquist rows where -k wraps onto k itself.
        if (k.x == g.n / 2 || k.y == g.n / 2 || k.z == g.n / 2) return;
        const std::size_t nidx = g.flat(g.index_of(-k.x), g.index_of(-k.y), g.index_of(-k.z));
        for (int c = 0; c < 3; ++c) {
            worst = std::max(worst, std::abs(f.component(c)[idx] - std::conj(f.component(c)[nidx])));
            scale = std::max(scale, std::abs(f.component(c)[idx]));
        }
    });
    return worst <= tol * std::max(1.0, scale);
}

double spectral_norm_sq(const VectorField& f, double p) {
    double sum = 0.0;
    for_each_mode(f.grid(), [&](std::size_t idx, Wavevector k) {
        if (k.is_zero()) return;
        const double w = p == 0.0 ? 1.0 : std::pow(k.norm(), p);
        for (int c = 0; c < 3; ++c) sum += w * std::norm(f.component(c)[idx]);
    });
    double mean = 0.0;
    if (p == 0.0)
        for (int c = 0; c < 3; ++c) mean += std::norm(f.component(c)[0]);
    return two_pi * two_pi * two_pi * (sum + mean);
}

}  // namespace helns
