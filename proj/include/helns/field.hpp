#pragma once

#include <array>
#include <complex>
#include <vector>

#include "helns/grid.hpp"

namespace helns {

using cd = std::complex<double>;

// Real 3-vector field stored as Fourier coefficients over the full lattice,
// one dense array per component, x1 fastest. Convention:
//   f(x) = sum_k c(k) exp(i k.x),  c(k) = (1/n^3) sum_x f(x) exp(-i k.x).
// Real fields satisfy c(-k) = conj(c(k)).
class VectorField {
  public:
    explicit VectorField(GridSpec grid)
        : grid_(grid) {
        for (auto& c : comp_) c.assign(grid_.size(), cd{0.0, 0.0});
    }

    const GridSpec& grid() const { return grid_; }

    std::vector<cd>& component(int i) { return comp_[i]; }
    const std::vector<cd>& component(int i) const { return comp_[i]; }

    cd coeff(int c, std::size_t idx) const { return comp_[c][idx]; }
    void set_coeff(int c, std::size_t idx, cd v) { comp_[c][idx] = v; }

    bool divergence_free() const { return divergence_free_; }
    bool zero_mean() const { return zero_mean_; }
    void set_divergence_free(bool b) { divergence_free_ = b; }
    void set_zero_mean(bool b) { zero_mean_ = b; }

    VectorField& operator+=(const VectorField& o) {
        require_same_grid(o);
        for (int c = 0; c < 3; ++c)
            for (std::size_t i = 0; i < comp_[c].size(); ++i) comp_[c][i] += o.comp_[c][i];
        divergence_free_ = divergence_free_ && o.divergence_free_;
        zero_mean_ = zero_mean_ && o.zero_mean_;
        return *this;
    }
    VectorField& operator-=(const VectorField& o) {
        require_same_grid(o);
        for (int c = 0; c < 3; ++c)
            for (std::size_t i = 0; i < comp_[c].size(); ++i) comp_[c][i] -= o.comp_[c][i];
        divergence_free_ = divergence_free_ && o.divergence_free_;
        zero_mean_ = zero_mean_ && o.zero_mean_;
        return *this;
    }
    VectorField& operator*=(double s) {
        for (auto& c : comp_)
            for (auto& v : c) v *= s;
        return *this;
    }

    void add_scaled(const VectorField& o, double s) {
        require_same_grid(o);
        for (int c = 0; c < 3; ++c)
            for (std::size_t i = 0; i < comp_[c].size(); ++i) comp_[c][i] += s * o.comp_[c][i];
        divergence_free_ = divergence_free_ && o.divergence_free_;
        zero_mean_ = zero_mean_ && o.zero_mean_;
    }

    friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
    friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
    friend VectorField operator*(double s, VectorField a) { return a *= s; }

    void require_same_grid(const VectorField& o) const;

  private:
    GridSpec grid_;
    std::array<std::vector<cd>, 3> comp_;
    bool divergence_free_ = false;
    bool zero_mean_ = false;
};

class ScalarField {
  public:
    explicit ScalarField(GridSpec grid) : grid_(grid), coeff_(grid.size(), cd{0.0, 0.0}) {}

    const GridSpec& grid() const { return grid_; }
    std::vector<cd>& coeffs() { return coeff_; }
    const std::vector<cd>& coeffs() const { return coeff_; }

  private:
    GridSpec grid_;
    std::vector<cd> coeff_;
};

// Physical-space samples, same layout (x1 fastest).
struct PhysicalVectorField {
    GridSpec grid;
    std::array<std::vector<double>, 3> comp;
};

}  // namespace helns
