#include "helns/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace helns::fft {

namespace {

std::mutex plan_mutex;

fftw_plan plan_for(int n, int sign) {
    static std::map<std::pair<int, int>, fftw_plan> cache;
    std::lock_guard lock(plan_mutex);
    auto it = cache.find({n, sign});
    if (it != cache.end()) return it->second;
    // Plan once on a scratch buffer; FFTW_UNALIGNED keeps the plan valid for
    // new-array execution on arbitrary buffers.
    std::size_t size = static_cast<std::size_t>(n) * n * n;
    fftw_complex* scratch = fftw_alloc_complex(size);
    fftw_plan p = fftw_plan_dft_3d(n, n, n, scratch, scratch, sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(scratch);
    cache.emplace(std::make_pair(n, sign), p);
    return p;
}

}  // namespace

void forward_c2c(int n, cd* data) {
    fftw_complex* d = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(plan_for(n, FFTW_FORWARD), d, d);
}

void backward_c2c(int n, cd* data) {
    fftw_complex* d = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(plan_for(n, FFTW_BACKWARD), d, d);
}

void forward(const GridSpec& g, const std::vector<double>& real, std::vector<cd>& coeffs) {
    coeffs.assign(g.size(), cd{});
    for (std::size_t i = 0; i < g.size(); ++i) coeffs[i] = cd{real[i], 0.0};
    forward_c2c(g.n, coeffs.data());
    const double scale = 1.0 / static_cast<double>(g.size());
    for (auto& c : coeffs) c *= scale;
}

void inverse(const GridSpec& g, const std::vector<cd>& coeffs, std::vector<double>& real) {
    std::vector<cd> scratch(coeffs);
    backward_c2c(g.n, scratch.data());
    real.resize(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) real[i] = scratch[i].real();
}

}  // namespace helns::fft
