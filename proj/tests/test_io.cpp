#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "helns/cli.hpp"
#include "helns/config.hpp"
#include "helns/csv.hpp"
#include "helns/errors.hpp"
#include "helns/snapshot.hpp"
#include "test_util.hpp"

using namespace helns;
using namespace helns::testing;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("helns_test_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("snapshot format") {
    TempDir dir;
    const GridSpec g(16);
    const SolverState s{abc_flow(g, 1.0, 1.0, 1.0), 0.25};

    SUBCASE("size and bit-exact sample round trip") {
        const std::string path = dir.file("a.bin");
        write_snapshot(path, s, 1.0);
        CHECK(fs::file_size(path) == 8 + 4 + 16 + 24 * g.size());

        const Snapshot raw = read_snapshot_raw(path);
        CHECK(raw.n == 16);
        CHECK(raw.t == 0.25);
        CHECK(raw.nu == 1.0);
        const Snapshot direct = make_snapshot(s, 1.0);
        CHECK(raw.samples == direct.samples);  // bitwise

        const std::string path2 = dir.file("b.bin");
        write_snapshot(path2, raw);
        CHECK(slurp(path) == slurp(path2));
    }

    SUBCASE("state re-derivation keeps the field") {
        const std::string path = dir.file("c.bin");
        write_snapshot(path, s, 0.7);
        const LoadedState loaded = read_snapshot(path);
        CHECK(!loaded.reprojected);
        CHECK(loaded.nu == 0.7);
        CHECK(loaded.state.t == 0.25);
        CHECK(rel_diff(loaded.state.v, s.v) <= 1e-13);
        CHECK(loaded.state.v.divergence_free());
    }

    SUBCASE("bad magic") {
        const std::string path = dir.file("bad.bin");
        std::ofstream(path, std::ios::binary) << "NOTMAGIC" << std::string(100, '\0');
        CHECK_THROWS_AS(read_snapshot_raw(path), BadMagic);
    }

    SUBCASE("truncated file") {
        const std::string good = dir.file("good.bin");
        write_snapshot(good, s, 1.0);
        const std::string all = slurp(good);
        const std::string path = dir.file("trunc.bin");
        std::ofstream(path, std::ios::binary) << all.substr(0, all.size() - 9);
        CHECK_THROWS_AS(read_snapshot_raw(path), SizeMismatch);
    }

    SUBCASE("perturbed samples are re-projected and flagged") {
        Snapshot snap = make_snapshot(s, 1.0);
        // Add a gradient component: g = grad(sin x1) = (cos x1, 0, 0).
        const double h = g.dx();
        std::size_t idx = 0;
        for (int iz = 0; iz < g.n; ++iz)
            for (int iy = 0; iy < g.n; ++iy)
                for (int ix = 0; ix < g.n; ++ix, ++idx)
                    snap.samples[3 * idx] += 0.05 * std::cos(ix * h);
        const std::string path = dir.file("pert.bin");
        write_snapshot(path, snap);
        const LoadedState loaded = read_snapshot(path);
        CHECK(loaded.reprojected);
        const auto [dabs, drel] = divergence_residual(loaded.state.v);
        CHECK(drel <= 1e-12);
        // The projection removed the injected gradient, recovering the flow.
        CHECK(rel_diff(loaded.state.v, s.v) <= 1e-10);
    }

    SUBCASE("missing file") {
        CHECK_THROWS_AS(read_snapshot_raw(dir.file("nope.bin")), IoError);
    }
}

TEST_CASE("diagnostics csv") {
    TempDir dir;
    std::vector<DiagnosticsRecord> records;
    for (int i = 0; i < 3; ++i) {
        DiagnosticsRecord r;
        r.t = 0.1 * i;
        r.energy = 1.0 / 3.0 + i;
        r.grad_sq = std::sqrt(2.0) * (i + 1);
        r.Y = 0.123456789012345678 + i;
        r.A32_sq = 1e-17 * (i + 1);
        r.cond_i = 3.0;
        r.cond_ii = 4.0;
        r.cond_iii = 5.0;
        r.cond_iv = 6.0;
        r.a = i == 2 ? -std::numeric_limits<double>::infinity() : 0.5;
        r.a_plus_cubed = 0.125;
        r.a_minus_fifth = 0.0;
        r.cross_term = -1e-9;
        r.cancel_resid = 1e-12;
        r.ineq_3_2_lhs = 0.1;
        r.ineq_3_2_rhs = 0.2;
        r.ineq_3_3_lhs = 0.3;
        r.ineq_3_3_rhs = 0.4;
        r.ineq_3_5_slack = 0.5;
        r.ineq_3_10_lhs = 0.0;
        r.ineq_3_10_rhs = 0.0;
        r.envelope = 7.0 + i;
        r.envelope_ok = i % 2 == 0;
        records.push_back(r);
    }

    const std::string path = dir.file("d.csv");
    write_diagnostics_csv(path, records);

    SUBCASE("header and row count") {
        std::ifstream in(path);
        std::string header;
        std::getline(in, header);
        CHECK(header.rfind("t,energy,grad_sq,Y,A32_sq,cond_i", 0) == 0);
        CHECK(header.find("envelope_ok") != std::string::npos);
    }

    SUBCASE("re-parsing reproduces every double exactly") {
        const auto back = read_diagnostics_csv(path);
        REQUIRE(back.size() == records.size());
        for (std::size_t i = 0; i < back.size(); ++i) {
            CHECK(back[i].t == records[i].t);
            CHECK(back[i].energy == records[i].energy);
            CHECK(back[i].grad_sq == records[i].grad_sq);
            CHECK(back[i].Y == records[i].Y);
            CHECK(back[i].A32_sq == records[i].A32_sq);
            CHECK(back[i].a == records[i].a);
            CHECK(back[i].cross_term == records[i].cross_term);
            CHECK(back[i].envelope == records[i].envelope);
            CHECK(back[i].envelope_ok == records[i].envelope_ok);
        }
    }

    SUBCASE("t must increase") {
        auto bad = records;
        bad[1].t = bad[0].t;
        CHECK_THROWS_AS(write_diagnostics_csv(dir.file("bad.csv"), bad), IoError);
    }
}

TEST_CASE("run configuration") {
    SUBCASE("defaults") {
        const RunConfig cfg = parse_run_config("");
        CHECK(cfg.n == 32);
        CHECK(cfg.nu == 1.0);
        CHECK(cfg.init == "abc");
        CHECK(cfg.a_schedule == "const:0");
    }

    SUBCASE("all keys and comments") {
        const RunConfig cfg = parse_run_config(
            "# run\n"
            "n = 16\nnu = 0.5\nt_end = 2.5\ndt_max = 0.004\ncfl = 0.9\noutput_every = 7\n"
            "init = random\nabc_A = 1.5\nabc_B = -1\nabc_C = 0\nseed = 99\nslope = -1.5\n"
            "helicity_fraction = 0.25\nk_min = 2\nk_max = 5\na_schedule = neg_inf\n"
            "out_dir = /tmp/x\n");
        CHECK(cfg.n == 16);
        CHECK(cfg.nu == 0.5);
        CHECK(cfg.t_end == 2.5);
        CHECK(cfg.dt_max == 0.004);
        CHECK(cfg.cfl == 0.9);
        CHECK(cfg.output_every == 7);
        CHECK(cfg.init == "random");
        CHECK(cfg.abc_A == 1.5);
        CHECK(cfg.seed == 99);
        CHECK(cfg.slope == -1.5);
        CHECK(cfg.helicity_fraction == 0.25);
        CHECK(cfg.k_min == 2);
        CHECK(cfg.k_max == 5);
        CHECK(cfg.a_schedule == "neg_inf");
        CHECK(cfg.out_dir == "/tmp/x");
    }

    SUBCASE("unknown keys and malformed values are rejected") {
        CHECK_THROWS_AS(parse_run_config("unknown_key = 3\n"), ConfigError);
        CHECK_THROWS_AS(parse_run_config("nu = abc\n"), ConfigError);
        CHECK_THROWS_AS(parse_run_config("just a line\n"), ConfigError);
        CHECK_THROWS_AS(parse_run_config("init = vortex\n"), ConfigError);
    }

    SUBCASE("schedule specs") {
        CHECK(parse_schedule("const:1.25").at(0.0) == 1.25);
        CHECK(parse_schedule("neg_inf").at(3.0) == -std::numeric_limits<double>::infinity());
        CHECK(parse_schedule("const:-inf").at(0.0) ==
              -std::numeric_limits<double>::infinity());
        CHECK_THROWS_AS(parse_schedule("linear:3"), ConfigError);

        TempDir dir;
        const std::string table = dir.file("sched.txt");
        std::ofstream(table) << "# t a\n0.0 1.0\n0.5 -2.0\n";
        const Schedule s = parse_schedule("table:" + table);
        CHECK(s.at(0.25) == 1.0);
        CHECK(s.at(0.75) == -2.0);
        CHECK_THROWS_AS(parse_schedule("table:/nonexistent/file"), IoError);
    }
}

TEST_CASE("cli dispatch") {
    TempDir dir;

    SUBCASE("simulate + monitor + decompose end-to-end") {
        const std::string cfg_path = dir.file("run.cfg");
        const std::string out_dir = dir.file("out");
        std::ofstream(cfg_path) << "n = 16\ninit = abc\nt_end = 0.25\ndt_max = 0.05\n"
                                << "output_every = 2\nout_dir = " << out_dir << "\n";
        CHECK(cli_dispatch({"simulate", "--config", cfg_path}) == 0);
        CHECK(fs::exists(out_dir + "/diagnostics.csv"));
        CHECK(fs::exists(out_dir + "/probe.txt"));
        CHECK(fs::exists(out_dir + "/snap_000000.bin"));

        // Y column tracks the analytic decay 3 (2pi)^3 e^(-2t).
        const auto records = read_diagnostics_csv(out_dir + "/diagnostics.csv");
        REQUIRE(records.size() >= 2);
        const double vol = two_pi * two_pi * two_pi;
        for (const auto& r : records) {
            const double expect = 3.0 * vol * std::exp(-2.0 * r.t);
            CHECK(std::abs(r.Y - expect) <= 1e-6 * expect);
            CHECK(r.envelope_ok);
        }

        // monitor over the stored snapshots: deterministic and byte-identical.
        const std::string m1 = dir.file("m1.csv");
        const std::string m2 = dir.file("m2.csv");
        CHECK(cli_dispatch({"monitor", "--in", out_dir, "--a-schedule", "neg_inf", "--c5",
                            "auto", "--c1", "0.5", "--out", m1}) == 0);
        CHECK(cli_dispatch({"monitor", "--in", out_dir, "--a-schedule", "neg_inf", "--c5",
                            "auto", "--c1", "0.5", "--out", m2}) == 0);
        CHECK(slurp(m1) == slurp(m2));
        CHECK(!slurp(m1).empty());

        // With a = -inf, cond_iii is the whole-vorticity quantity: for the
        // ABC flow that equals cond_i (= Y on the unit shell).
        const auto mrec = read_diagnostics_csv(m1);
        for (const auto& r : mrec) CHECK(std::abs(r.cond_iii - r.cond_i) <= 1e-12 * r.cond_i);

        const std::string bands = dir.file("bands.csv");
        CHECK(cli_dispatch({"decompose", "--in", out_dir + "/snap_000000.bin", "--bands",
                            "-1.5,0,1.5", "--out", bands}) == 0);
        const std::string text = slurp(bands);
        CHECK(text.find("section,key,value") == 0);
        CHECK(text.find("spectrum_plus,1,") != std::string::npos);
    }

    SUBCASE("probe writes a parseable report") {
        const std::string out = dir.file("probe.txt");
        CHECK(cli_dispatch({"probe", "--n", "16", "--ensemble", "4", "--seed", "7", "--out",
                            out}) == 0);
        const std::string text = slurp(out);
        CHECK(text.find("c1_hat=") != std::string::npos);
        CHECK(text.find("ratio_2_17_max=") != std::string::npos);
    }

    SUBCASE("exit codes") {
        CHECK(cli_dispatch({"--help"}) == 0);
        CHECK(cli_dispatch({"simulate"}) == 2);                       // missing --config
        CHECK(cli_dispatch({"nonsense"}) == 2);                       // unknown subcommand
        CHECK(cli_dispatch({"simulate", "--config", dir.file("missing.cfg")}) == 3);
        const std::string bad_cfg = dir.file("bad.cfg");
        std::ofstream(bad_cfg) << "frobnicate = 1\n";
        CHECK(cli_dispatch({"simulate", "--config", bad_cfg}) == 2);
        CHECK(cli_dispatch({"monitor", "--in", dir.file("empty_dir")}) == 3);
        const std::string not_snap = dir.file("not_snap.bin");
        std::ofstream(not_snap) << "garbage";
        CHECK(cli_dispatch({"decompose", "--in", not_snap}) == 3);
    }
}
