#pragma once

#include <complex>
#include <vector>

#include "helns/grid.hpp"

namespace helns::fft {

using cd = std::complex<double>;

// Unnormalized in-place c2c transforms on an n^3 cube (x1 fastest).
// Plans are cached per (n, direction) and shared; execution is thread-safe.
void forward_c2c(int n, cd* data);
void backward_c2c(int n, cd* data);

// Physical samples -> Fourier coefficients (scaled by 1/n^3).
void forward(const GridSpec& g, const std::vector<double>& real, std::vector<cd>& coeffs);
// Fourier coefficients -> physical samples (real part; imaginary content of a
// conjugate-symmetric input is at rounding level).
void inverse(const GridSpec& g, const std::vector<cd>& coeffs, std::vector<double>& real);

}  // namespace helns::fft
