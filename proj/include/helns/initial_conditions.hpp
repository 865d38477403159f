#pragma once

#include <cstdint>

#include "helns/field.hpp"

namespace helns {

// v = (A sin x3 + C cos x2, B sin x1 + A cos x3, C sin x2 + B cos x1),
// constructed spectrally (six modes on the |k| = 1 shell); curl v = v.
VectorField abc_flow(const GridSpec& g, double A, double B, double C);

// v = (sin x1 cos x2 cos x3, -cos x1 sin x2 cos x3, 0); divergence-free,
// zero total helicity.
VectorField taylor_green(const GridSpec& g);

// Random divergence-free field: helical amplitudes ~ |k|^(slope/2) Gaussian
// on shells k_min <= |k| <= k_max, energy split exactly helicity_fraction
// into the positive family, normalized to ||v|| = 1. Deterministic in seed.
VectorField random_divfree(const GridSpec& g, double slope, double helicity_fraction,
                           int k_min, int k_max, std::uint64_t seed);

}  // namespace helns
