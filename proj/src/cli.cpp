#include "helns/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "helns/config.hpp"
#include "helns/csv.hpp"
#include "helns/errors.hpp"
#include "helns/helical.hpp"
#include "helns/monitor.hpp"
#include "helns/operators.hpp"
#include "helns/snapshot.hpp"
#include "helns/verify.hpp"

namespace helns {

namespace {

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitInvariant = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

void print_probe_report(std::ostream& out, const ConstantProbeReport& rep) {
    out << "c1_hat=" << format_double_17(rep.c1_hat) << '\n'
        << "c3_hat=" << format_double_17(rep.c3_hat) << '\n'
        << "c4_hat=" << format_double_17(rep.c4_hat) << '\n'
        << "ratio_2_17_min=" << format_double_17(rep.ratio_2_17_min) << '\n'
        << "ratio_2_17_median=" << format_double_17(rep.ratio_2_17_median) << '\n'
        << "ratio_2_17_p90=" << format_double_17(rep.ratio_2_17_p90) << '\n'
        << "ratio_2_17_max=" << format_double_17(rep.ratio_2_17_max) << '\n'
        << "size=" << rep.size << '\n'
        << "skipped=" << rep.skipped << '\n'
        << "seed=" << rep.seed << '\n'
        << "n=" << rep.n << '\n'
        << "ensemble=" << rep.ensemble << '\n';
}

int cmd_simulate(const std::string& config_path) {
    const RunConfig cfg = load_run_config(config_path);
    const Schedule schedule = parse_schedule(cfg.a_schedule);
    const VectorField v0 = build_initial_condition(cfg);

    fs::create_directories(cfg.out_dir);

    // Probe c1 on the run's own grid so the envelope column is always filled.
    const ConstantProbeReport probe =
        probe_constants({GridSpec(cfg.n), cfg.seed, std::max(2, cfg.k_max)}, 16);
    {
        std::ofstream pr(fs::path(cfg.out_dir) / "probe.txt");
        print_probe_report(pr, probe);
    }

    double running_c5 = 0.0;
    std::size_t snap_index = 0;
    StepObserver observer = [&](const SolverState& s, DiagnosticsRecord& rec) {
        running_c5 = std::max(running_c5, rec.energy);
        DiagnosticsRecord full = full_record(s.v, s.t, schedule.at(s.t), running_c5);
        full.energy = rec.energy;
        full.grad_sq = rec.grad_sq;
        rec = full;
        char name[32];
        std::snprintf(name, sizeof name, "snap_%06zu.bin", snap_index++);
        write_snapshot((fs::path(cfg.out_dir) / name).string(), s, cfg.nu);
    };

    const Trajectory traj = simulate(cfg.solver(), v0, observer);
    Trajectory enriched = traj;
    apply_gronwall_envelope(enriched, probe.c1_hat);

    std::vector<DiagnosticsRecord> records;
    records.reserve(enriched.entries.size());
    for (const auto& e : enriched.entries) records.push_back(e.record);
    write_diagnostics_csv((fs::path(cfg.out_dir) / "diagnostics.csv").string(), records);

    std::cout << "simulate: " << records.size() << " records, " << traj.step_t.size() - 1
              << " steps, final t = " << traj.step_t.back() << ", out = " << cfg.out_dir
              << "\n";
    return kExitOk;
}

int cmd_decompose(const std::string& in, const std::string& bands_arg,
                  const std::string& out_path) {
    const LoadedState loaded = read_snapshot(in);
    const VectorField& v = loaded.state.v;
    const HelicalDecomposition d = decompose(v);

    std::vector<double> cuts;
    {
        std::string token;
        std::istringstream ss(bands_arg);
        while (std::getline(ss, token, ','))
            if (!token.empty()) cuts.push_back(std::strtod(token.c_str(), nullptr));
    }
    std::sort(cuts.begin(), cuts.end());

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw IoError("cannot open " + out_path + " for writing");
        out = &file;
    }

    *out << "section,key,value\n";
    *out << "meta,n," << v.grid().n << "\n";
    *out << "meta,t," << format_double_17(loaded.state.t) << "\n";
    *out << "meta,reprojected," << (loaded.reprojected ? 1 : 0) << "\n";

    auto band_energy = [&](SpectralInterval I) {
        const auto [ep, em] = helical_energies(band_filter(d, I));
        return ep + em;
    };
    if (cuts.empty()) {
        *out << "band,(-inf;inf)," << format_double_17(band_energy(SpectralInterval::all()))
             << "\n";
    } else {
        *out << "band,(-inf;" << cuts.front() << "],"
             << format_double_17(band_energy(SpectralInterval::upto(cuts.front()))) << "\n";
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
            *out << "band,(" << cuts[i] << ";" << cuts[i + 1] << "],"
                 << format_double_17(
                        band_energy(SpectralInterval::between(cuts[i], cuts[i + 1])))
                 << "\n";
        *out << "band,(" << cuts.back() << ";inf),"
             << format_double_17(band_energy(SpectralInterval::above(cuts.back()))) << "\n";
    }

    // Helical shell spectrum: energy per rounded shell |k|, split by sign.
    const int smax = v.grid().n / 2;
    std::vector<double> eplus(smax + 1, 0.0), eminus(smax + 1, 0.0);
    for_each_mode(v.grid(), [&](std::size_t idx, Wavevector k) {
        if (k.is_zero()) return;
        const int shell = static_cast<int>(std::lround(k.norm()));
        if (shell > smax) return;
        eplus[shell] += std::norm(d.plus[idx]);
        eminus[shell] += std::norm(d.minus[idx]);
    });
    const double vol = two_pi * two_pi * two_pi;
    for (int s = 1; s <= smax; ++s) {
        if (eplus[s] == 0.0 && eminus[s] == 0.0) continue;
        *out << "spectrum_plus," << s << "," << format_double_17(vol * eplus[s]) << "\n";
        *out << "spectrum_minus," << s << "," << format_double_17(vol * eminus[s]) << "\n";
    }
    return kExitOk;
}

int cmd_monitor(const std::string& dir, const std::string& schedule_spec,
                const std::string& c5_spec, double c1, const std::string& out_path) {
    const Schedule schedule = parse_schedule(schedule_spec);

    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".bin") files.push_back(e.path());
    if (files.empty()) throw IoError("no .bin snapshots in " + dir);
    std::sort(files.begin(), files.end());

    std::vector<LoadedState> states;
    states.reserve(files.size());
    for (const auto& f : files) states.push_back(read_snapshot(f.string()));
    std::sort(states.begin(), states.end(),
              [](const LoadedState& a, const LoadedState& b) { return a.state.t < b.state.t; });

    double c5 = 0.0;
    if (c5_spec == "auto") {
        for (const auto& s : states) c5 = std::max(c5, inner_product(s.state.v, s.state.v));
    } else {
        c5 = std::strtod(c5_spec.c_str(), nullptr);
    }

    double c1_hat = c1;
    if (!(c1_hat > 0.0)) {
        const int n = states.front().state.v.grid().n;
        c1_hat = probe_constants({GridSpec(n), 1, 4}, 16).c1_hat;
    }

    Trajectory traj;
    for (const auto& s : states) {
        TrajectoryEntry e;
        e.t = s.state.t;
        e.record = full_record(s.state.v, s.state.t, schedule.at(s.state.t), c5);
        traj.entries.push_back(std::move(e));
    }
    apply_gronwall_envelope(traj, c1_hat);

    std::vector<DiagnosticsRecord> records;
    for (const auto& e : traj.entries) records.push_back(e.record);
    const std::string out = out_path.empty() ? (fs::path(dir) / "monitor.csv").string()
                                             : out_path;
    write_diagnostics_csv(out, records);
    std::cout << "monitor: " << records.size() << " records -> " << out << "\n";
    return kExitOk;
}

int cmd_probe(int n, int ensemble, std::uint64_t seed, const std::string& out_path) {
    const ConstantProbeReport rep = probe_constants({GridSpec(n), seed, 4}, ensemble);
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw IoError("cannot open " + out_path + " for writing");
        print_probe_report(out, rep);
    }
    print_probe_report(std::cout, rep);
    return kExitOk;
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args) {
    CLI::App app{"pseudo-spectral periodic-box Navier-Stokes solver with helical-band "
                 "regularity diagnostics"};
    app.require_subcommand(1);

    std::string config_path;
    auto* sim = app.add_subcommand("simulate", "run a configured simulation");
    sim->add_option("--config", config_path, "key=value run configuration file")->required();

    std::string dec_in, dec_bands, dec_out;
    auto* dec = app.add_subcommand("decompose", "band energies and helical spectra of a snapshot");
    dec->add_option("--in", dec_in, "snapshot file")->required();
    dec->add_option("--bands", dec_bands, "comma-separated band cut points a1,a2,...");
    dec->add_option("--out", dec_out, "output file (default: stdout)");

    std::string mon_dir, mon_schedule = "const:0", mon_c5 = "auto", mon_out;
    double mon_c1 = 0.0;
    auto* mon = app.add_subcommand("monitor", "recompute diagnostics from stored snapshots");
    mon->add_option("--in", mon_dir, "snapshot directory")->required();
    mon->add_option("--a-schedule", mon_schedule, "const:<value> | neg_inf | table:<path>");
    mon->add_option("--c5", mon_c5, "essential bound for ||v||^2, or 'auto'");
    mon->add_option("--c1", mon_c1, "probed c1 (default: internal probe)");
    mon->add_option("--out", mon_out, "output csv (default: <dir>/monitor.csv)");

    int probe_n = 32, probe_m = 16;
    std::uint64_t probe_seed = 1;
    std::string probe_out;
    auto* probe = app.add_subcommand("probe", "estimate the unnamed inequality constants");
    probe->add_option("--n", probe_n, "grid resolution");
    probe->add_option("--ensemble", probe_m, "number of random fields");
    probe->add_option("--seed", probe_seed, "ensemble seed");
    probe->add_option("--out", probe_out, "also write the report to this file");

    auto* ver = app.add_subcommand("verify", "run the operator/identity invariant suite");

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            std::cout << app.help();
            return kExitOk;
        }
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }

    try {
        if (sim->parsed()) return cmd_simulate(config_path);
        if (dec->parsed()) return cmd_decompose(dec_in, dec_bands, dec_out);
        if (mon->parsed()) return cmd_monitor(mon_dir, mon_schedule, mon_c5, mon_c1, mon_out);
        if (probe->parsed()) return cmd_probe(probe_n, probe_m, probe_seed, probe_out);
        if (ver->parsed()) {
            const int failures = run_verify(std::cout);
            std::cout << (failures == 0 ? "verify: all checks passed\n"
                                        : "verify: " + std::to_string(failures) +
                                              " check(s) failed\n");
            return failures == 0 ? kExitOk : kExitInvariant;
        }
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const BadMagic& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const SizeMismatch& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvariant;
    }
    return kExitConfig;
}

}  // namespace helns
