#include "helns/snapshot.hpp"

#include <cstring>
#include <fstream>

#include "helns/errors.hpp"

namespace helns {

namespace {

constexpr char kMagic[8] = {'H', 'E', 'L', 'N', 'S', 'V', '0', '1'};

static_assert(sizeof(double) == 8, "snapshot format requires 64-bit IEEE doubles");

std::size_t expected_size(std::size_t n3) { return 8 + 4 + 16 + 24 * n3; }

}  // namespace

Snapshot make_snapshot(const SolverState& state, double nu) {
    Snapshot s;
    s.n = state.v.grid().n;
    s.nu = nu;
    s.t = state.t;
    const PhysicalVectorField p = to_physical(state.v);
    const std::size_t n3 = state.v.grid().size();
    s.samples.resize(3 * n3);
    for (std::size_t i = 0; i < n3; ++i)
        for (int c = 0; c < 3; ++c) s.samples[3 * i + c] = p.comp[c][i];
    return s;
}

void write_snapshot(const std::string& path, const Snapshot& snap) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out.write(kMagic, 8);
    const std::uint32_t n = static_cast<std::uint32_t>(snap.n);
    out.write(reinterpret_cast<const char*>(&n), 4);
    out.write(reinterpret_cast<const char*>(&snap.nu), 8);
    out.write(reinterpret_cast<const char*>(&snap.t), 8);
    out.write(reinterpret_cast<const char*>(snap.samples.data()),
              static_cast<std::streamsize>(snap.samples.size() * 8));
    if (!out) throw IoError("short write to " + path);
}

Snapshot read_snapshot_raw(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::vector<char> bytes((std::istreambuf_iterator<char>(in)),
                            std::istreambuf_iterator<char>());
    if (bytes.size() < 8 || std::memcmp(bytes.data(), kMagic, 8) != 0) throw BadMagic{};
    if (bytes.size() < 8 + 4 + 16) throw SizeMismatch("truncated snapshot header in " + path);

    Snapshot s;
    std::uint32_t n = 0;
    std::memcpy(&n, bytes.data() + 8, 4);
    s.n = static_cast<int>(n);
    std::memcpy(&s.nu, bytes.data() + 12, 8);
    std::memcpy(&s.t, bytes.data() + 20, 8);
    const std::size_t n3 = static_cast<std::size_t>(s.n) * s.n * s.n;
    if (bytes.size() != expected_size(n3))
        throw SizeMismatch("snapshot " + path + " has " + std::to_string(bytes.size()) +
                           " bytes, expected " + std::to_string(expected_size(n3)));
    s.samples.resize(3 * n3);
    std::memcpy(s.samples.data(), bytes.data() + 28, 24 * n3);
    return s;
}

LoadedState to_state(const Snapshot& snap) {
    const GridSpec g(snap.n);
    PhysicalVectorField p{g, {}};
    for (auto& c : p.comp) c.resize(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        for (int c = 0; c < 3; ++c) p.comp[c][i] = snap.samples[3 * i + c];

    LoadedState out{SolverState{from_physical(p), snap.t}, snap.nu, false};
    VectorField& v = out.state.v;
    const auto [abs, rel] = divergence_residual(v);
    double mean = 0.0;
    for (int c = 0; c < 3; ++c) mean += std::abs(v.component(c)[0]);
    if (rel > 1e-10 || mean > 1e-10) {
        v = leray_project(v);
        out.reprojected = true;
    } else {
        v.set_divergence_free(true);
        v.set_zero_mean(mean == 0.0);
    }
    return out;
}

LoadedState read_snapshot(const std::string& path) {
    return to_state(read_snapshot_raw(path));
}

void write_snapshot(const std::string& path, const SolverState& state, double nu) {
    write_snapshot(path, make_snapshot(state, nu));
}

}  // namespace helns
