#pragma once

#include <string>
#include <vector>

#include "helns/solver.hpp"

namespace helns {

// Binary snapshot: "HELNSV01", u32 n, f64 nu, f64 t, then n^3 physical
// samples x 3 components (interleaved per sample, x1 fastest), all
// little-endian IEEE-754. File size = 8 + 4 + 16 + 24 n^3.
struct Snapshot {
    int n = 0;
    double nu = 1.0;
    double t = 0.0;
    std::vector<double> samples;  // 3 * n^3, interleaved
};

Snapshot make_snapshot(const SolverState& state, double nu);
void write_snapshot(const std::string& path, const Snapshot& snap);
Snapshot read_snapshot_raw(const std::string& path);  // BadMagic / SizeMismatch

struct LoadedState {
    SolverState state;
    double nu = 1.0;
    // Samples failed the divergence-free re-check and the field was
    // re-projected (warning-level condition).
    bool reprojected = false;
};

LoadedState to_state(const Snapshot& snap);
LoadedState read_snapshot(const std::string& path);

void write_snapshot(const std::string& path, const SolverState& state, double nu);

}  // namespace helns
