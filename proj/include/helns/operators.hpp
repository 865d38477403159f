#pragma once

#include "helns/field.hpp"

namespace helns {

enum class DealiasMode {
    ThreeHalvesPad,     // exact quadratic products via a 3n/2 transform grid
    TwoThirdsTruncate,  // native-grid product of kc-truncated inputs
};

PhysicalVectorField to_physical(const VectorField& f);
VectorField from_physical(const PhysicalVectorField& p);

// Orthogonal projection onto divergence-free zero-mean fields:
// c(k) -> c(k) - k (k.c)/|k|^2, c(0) -> 0.
VectorField leray_project(const VectorField& f);

// c(k) -> i k x c(k).
VectorField curl(const VectorField& f);

// Fractional Laplacian multiplier |k|^(2 alpha); the mean mode maps to zero.
// alpha < 0 requires c(0) = 0 on input.
VectorField neg_laplacian_pow(const VectorField& f, double alpha);
ScalarField neg_laplacian_pow(const ScalarField& f, double alpha);

// Parseval form, (2pi)^3 sum_k Re(c_f . conj(c_g)).
double inner_product(const VectorField& f, const VectorField& g);
double inner_product(const ScalarField& f, const ScalarField& g);
double l2_norm(const VectorField& f);
double l2_norm(const ScalarField& f);

// L^3 norm of the pointwise Euclidean magnitude, native-grid quadrature.
double l3_norm(const VectorField& f);
double l3_norm(const ScalarField& f);

// Pointwise f x g, alias-free by default. Output is not divergence-free
// in general.
VectorField pointwise_cross(const VectorField& f, const VectorField& g,
                            DealiasMode mode = DealiasMode::ThreeHalvesPad);

// Zero every mode with any |k_a| > kc (defaults to the grid's 2/3 cutoff).
void truncate_modes(VectorField& f, int kc = -1);

ScalarField component(const VectorField& f, int i);

double max_pointwise_speed(const VectorField& f);

// sqrt(sum |k.c|^2) and the same relative to sqrt(sum |k|^2 |c|^2).
std::pair<double, double> divergence_residual(const VectorField& f);

bool is_conjugate_symmetric(const VectorField& f, double tol);

// Weighted spectral sums (2pi)^3 sum_k |k|^p |c(k)|^2; p = 0 gives ||f||^2,
// p = 2 gives ||grad f||^2 for zero-mean fields.
double spectral_norm_sq(const VectorField& f, double p);

}  // namespace helns
