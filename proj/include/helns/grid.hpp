#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include "helns/errors.hpp"

namespace helns {

inline constexpr double two_pi = 6.283185307179586476925286766559;

// Integer wavevector on the truncated lattice [-n/2+1, n/2]^3.
struct Wavevector {
    int x = 0, y = 0, z = 0;

    int norm2() const { return x * x + y * y + z * z; }
    double norm() const { return std::sqrt(static_cast<double>(norm2())); }
    bool is_zero() const { return x == 0 && y == 0 && z == 0; }
    Wavevector operator-() const { return {-x, -y, -z}; }
    bool operator==(const Wavevector&) const = default;
};

// Discretization frame: n modes per axis on the periodic box [0,2pi)^3.
// Solver products use two-thirds truncation, diagnostic products use
// three-halves padding; both cutoffs derive from n alone.
struct GridSpec {
    int n;

    explicit GridSpec(int n_) : n(n_) {
        if (n < 8 || n % 2 != 0)
            throw ConfigError("grid resolution must be an even integer >= 8, got " +
                              std::to_string(n_));
    }

    std::size_t size() const { return static_cast<std::size_t>(n) * n * n; }
    double dx() const { return two_pi / n; }
    double cell_volume() const { return dx() * dx() * dx(); }

    // Largest kc with 3*kc < n: quadratic products of kc-truncated fields
    // are alias-free on the native grid.
    int dealias_cutoff() const { return (n - 1) / 3; }

    // Frequency index -> signed wavenumber in [-n/2+1, n/2].
    int wavenumber(int index) const { return index <= n / 2 ? index : index - n; }
    // Signed wavenumber -> frequency index.
    int index_of(int k) const { return k >= 0 ? k : k + n; }

    std::size_t flat(int ix, int iy, int iz) const {
        return static_cast<std::size_t>(ix) +
               static_cast<std::size_t>(n) * (static_cast<std::size_t>(iy) +
                                              static_cast<std::size_t>(n) * iz);
    }

    bool operator==(const GridSpec&) const = default;
};

// Visit every lattice site as (flat index, wavevector).
template <typename F>
void for_each_mode(const GridSpec& g, F&& f) {
    std::size_t idx = 0;
    for (int iz = 0; iz < g.n; ++iz) {
        const int kz = g.wavenumber(iz);
        for (int iy = 0; iy < g.n; ++iy) {
            const int ky = g.wavenumber(iy);
            for (int ix = 0; ix < g.n; ++ix, ++idx) {
                f(idx, Wavevector{g.wavenumber(ix), ky, kz});
            }
        }
    }
}

}  // namespace helns
