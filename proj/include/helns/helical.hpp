#pragma once

#include <limits>

#include "helns/field.hpp"

namespace helns {

// Per-mode eigenvectors of i k x (.): i k x h± = ±|k| h±.
// Frame rule: e1 = normalize(k x zhat) (k x xhat when k is on the z axis),
// e2 = normalize(k) x e1, h± = (e1 ± i e2)/sqrt(2). The frame satisfies
// h±(-k) = -h∓(k) and conj(h±(k)) = h∓(k); a field is real iff
// c±(-k) = -conj(c±(k)).
struct ModeBasis {
    std::array<cd, 3> plus;
    std::array<cd, 3> minus;
};

ModeBasis helical_basis(const Wavevector& k);  // throws ZeroWavevector

// Coefficients in the curl eigenbasis, dense over the lattice (the k = 0
// slot stays zero). This is where the spectral band filters, |curl| powers
// and Stieltjes moments act.
struct HelicalDecomposition {
    GridSpec grid;
    std::vector<cd> plus;
    std::vector<cd> minus;

    explicit HelicalDecomposition(GridSpec g)
        : grid(g), plus(g.size(), cd{}), minus(g.size(), cd{}) {}
};

HelicalDecomposition decompose(const VectorField& f);  // throws NotDivergenceFree
VectorField recompose(const HelicalDecomposition& d);

// Half-open band of signed curl eigenvalues: keeps lo < lambda <= hi.
struct SpectralInterval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();

    bool contains(double lambda) const { return lo < lambda && lambda <= hi; }

    static SpectralInterval all() { return {}; }
    static SpectralInterval positive() { return {0.0, std::numeric_limits<double>::infinity()}; }
    static SpectralInterval negative() { return {-std::numeric_limits<double>::infinity(), 0.0}; }
    // P+_a = I - E_a keeps lambda > a; a = -inf gives the identity.
    static SpectralInterval above(double a) { return {a, std::numeric_limits<double>::infinity()}; }
    static SpectralInterval upto(double a) { return {-std::numeric_limits<double>::infinity(), a}; }
    static SpectralInterval between(double lo, double hi) { return {lo, hi}; }
};

// Keep the helical components whose signed eigenvalue lies in the band,
// zero the rest. Masking coefficient arrays is exact.
HelicalDecomposition band_filter(const HelicalDecomposition& d, SpectralInterval I);

// Field-level band projection. Modes with both signed eigenvalues inside the
// band are copied verbatim, so the full band returns f bit-exactly.
VectorField band_project(const VectorField& f, SpectralInterval I);

// A^s = |curl|^s: multiplier |k|^s on both helical components.
VectorField abs_curl_pow(const VectorField& f, double s);
HelicalDecomposition abs_curl_pow(const HelicalDecomposition& d, double s);

// Stieltjes moment of the spectral measure: sum over signed eigenvalues in I
// of lambda^p (2pi)^3 |c|^2. p = 0 gives the band energy.
double spectral_moment(const VectorField& f, int p, SpectralInterval I);
double spectral_moment(const HelicalDecomposition& d, int p, SpectralInterval I);

// Energy (2pi)^3 sum |c±|^2 of each helicity family.
std::pair<double, double> helical_energies(const HelicalDecomposition& d);

// Swap c+ <-> c-.
HelicalDecomposition helicity_swap(const HelicalDecomposition& d);
VectorField helicity_swap(const VectorField& f);

}  // namespace helns
