#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "helns/config.hpp"
#include "helns/csv.hpp"
#include "helns/helical.hpp"
#include "helns/initial_conditions.hpp"
#include "helns/monitor.hpp"
#include "helns/operators.hpp"
#include "helns/snapshot.hpp"
#include "helns/solver.hpp"

namespace py = pybind11;
using namespace helns;

namespace {

// numpy layout: physical samples and spectral coefficients are exposed as
// C-contiguous (n, n, n, 3) arrays indexed [i1, i2, i3, comp].
py::array_t<double> physical_array(const VectorField& f) {
    const int n = f.grid().n;
    py::array_t<double> out({n, n, n, 3});
    auto view = out.mutable_unchecked<4>();
    const PhysicalVectorField p = to_physical(f);
    for (int i3 = 0; i3 < n; ++i3)
        for (int i2 = 0; i2 < n; ++i2)
            for (int i1 = 0; i1 < n; ++i1) {
                const std::size_t idx = f.grid().flat(i1, i2, i3);
                for (int c = 0; c < 3; ++c) view(i1, i2, i3, c) = p.comp[c][idx];
            }
    return out;
}

VectorField field_from_physical(py::array_t<double, py::array::c_style | py::array::forcecast> a) {
    if (a.ndim() != 4 || a.shape(3) != 3 || a.shape(0) != a.shape(1) ||
        a.shape(1) != a.shape(2))
        throw py::value_error("expected an (n, n, n, 3) array of physical samples");
    const GridSpec g(static_cast<int>(a.shape(0)));
    PhysicalVectorField p{g, {}};
    for (auto& c : p.comp) c.resize(g.size());
    auto view = a.unchecked<4>();
    for (int i3 = 0; i3 < g.n; ++i3)
        for (int i2 = 0; i2 < g.n; ++i2)
            for (int i1 = 0; i1 < g.n; ++i1) {
                const std::size_t idx = g.flat(i1, i2, i3);
                for (int c = 0; c < 3; ++c) p.comp[c][idx] = view(i1, i2, i3, c);
            }
    return from_physical(p);
}

py::array_t<std::complex<double>> coefficient_array(const VectorField& f) {
    const int n = f.grid().n;
    py::array_t<std::complex<double>> out({n, n, n, 3});
    auto view = out.mutable_unchecked<4>();
    for (int i3 = 0; i3 < n; ++i3)
        for (int i2 = 0; i2 < n; ++i2)
            for (int i1 = 0; i1 < n; ++i1) {
                const std::size_t idx = f.grid().flat(i1, i2, i3);
                for (int c = 0; c < 3; ++c) view(i1, i2, i3, c) = f.component(c)[idx];
            }
    return out;
}

py::array_t<std::complex<double>> helical_array(const HelicalDecomposition& d, bool plus) {
    const int n = d.grid.n;
    py::array_t<std::complex<double>> out({n, n, n});
    auto view = out.mutable_unchecked<3>();
    const auto& src = plus ? d.plus : d.minus;
    for (int i3 = 0; i3 < n; ++i3)
        for (int i2 = 0; i2 < n; ++i2)
            for (int i1 = 0; i1 < n; ++i1) view(i1, i2, i3) = src[d.grid.flat(i1, i2, i3)];
    return out;
}

SpectralInterval make_interval(double lo, double hi) { return SpectralInterval{lo, hi}; }

py::dict record_dict(const DiagnosticsRecord& r) {
    py::dict d;
    d["t"] = r.t;
    d["energy"] = r.energy;
    d["grad_sq"] = r.grad_sq;
    d["Y"] = r.Y;
    d["A32_sq"] = r.A32_sq;
    d["cond_i"] = r.cond_i;
    d["cond_ii"] = r.cond_ii;
    d["cond_iii"] = r.cond_iii;
    d["cond_iv"] = r.cond_iv;
    d["a"] = r.a;
    d["a_plus_cubed"] = r.a_plus_cubed;
    d["a_minus_fifth"] = r.a_minus_fifth;
    d["cross_term"] = r.cross_term;
    d["cancel_resid"] = r.cancel_resid;
    d["ineq_3_2_lhs"] = r.ineq_3_2_lhs;
    d["ineq_3_2_rhs"] = r.ineq_3_2_rhs;
    d["ineq_3_3_lhs"] = r.ineq_3_3_lhs;
    d["ineq_3_3_rhs"] = r.ineq_3_3_rhs;
    d["ineq_3_5_slack"] = r.ineq_3_5_slack;
    d["ineq_3_10_lhs"] = r.ineq_3_10_lhs;
    d["ineq_3_10_rhs"] = r.ineq_3_10_rhs;
    d["envelope"] = r.envelope;
    d["envelope_ok"] = r.envelope_ok;
    d["omega_plus_sq"] = r.omega_plus_sq;
    return d;
}

Schedule schedule_from_object(const py::object& obj) {
    if (py::isinstance<py::str>(obj)) return parse_schedule(obj.cast<std::string>());
    if (obj.is_none()) return Schedule::constant(0.0);
    return Schedule::constant(obj.cast<double>());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "pseudo-spectral periodic-box Navier-Stokes solver with an exact helical "
              "calculus for the curl operator";

    py::register_exception<Error>(m, "HelnsError");

    py::class_<VectorField>(m, "VectorField")
        .def_property_readonly("n", [](const VectorField& f) { return f.grid().n; })
        .def_property_readonly("divergence_free", &VectorField::divergence_free)
        .def_property_readonly("zero_mean", &VectorField::zero_mean)
        .def("to_physical", &physical_array,
             "physical samples as an (n, n, n, 3) array, x1 along axis 0")
        .def("coefficients", &coefficient_array,
             "Fourier coefficients as an (n, n, n, 3) complex array (FFT index order)")
        .def("__add__", [](const VectorField& a, const VectorField& b) { return a + b; })
        .def("__sub__", [](const VectorField& a, const VectorField& b) { return a - b; })
        .def("__mul__", [](const VectorField& a, double s) { return s * a; })
        .def("__rmul__", [](const VectorField& a, double s) { return s * a; });

    py::class_<HelicalDecomposition>(m, "HelicalDecomposition")
        .def_property_readonly("n", [](const HelicalDecomposition& d) { return d.grid.n; })
        .def_property_readonly("plus",
                               [](const HelicalDecomposition& d) { return helical_array(d, true); })
        .def_property_readonly(
            "minus", [](const HelicalDecomposition& d) { return helical_array(d, false); });

    m.def("field_from_physical", &field_from_physical, py::arg("samples"));
    m.def("zero_field", [](int n) { return VectorField(GridSpec(n)); }, py::arg("n"));

    m.def("abc_flow", [](int n, double A, double B, double C) {
        return abc_flow(GridSpec(n), A, B, C);
    }, py::arg("n"), py::arg("A") = 1.0, py::arg("B") = 1.0, py::arg("C") = 1.0);
    m.def("taylor_green", [](int n) { return taylor_green(GridSpec(n)); }, py::arg("n"));
    m.def("random_divfree",
          [](int n, double slope, double helicity_fraction, int k_min, int k_max,
             std::uint64_t seed) {
              return random_divfree(GridSpec(n), slope, helicity_fraction, k_min, k_max, seed);
          },
          py::arg("n"), py::arg("slope") = -2.0, py::arg("helicity_fraction") = 0.5,
          py::arg("k_min") = 1, py::arg("k_max") = 4, py::arg("seed") = 1);

    m.def("leray_project", &leray_project);
    m.def("curl", &curl);
    m.def("neg_laplacian_pow",
          [](const VectorField& f, double alpha) { return neg_laplacian_pow(f, alpha); },
          py::arg("f"), py::arg("alpha"));
    m.def("abs_curl_pow",
          [](const VectorField& f, double s) { return abs_curl_pow(f, s); }, py::arg("f"),
          py::arg("s"));
    m.def("inner_product",
          [](const VectorField& f, const VectorField& g) { return inner_product(f, g); });
    m.def("l2_norm", [](const VectorField& f) { return l2_norm(f); });
    m.def("l3_norm", [](const VectorField& f) { return l3_norm(f); });
    m.def("pointwise_cross",
          [](const VectorField& f, const VectorField& g, bool padded) {
              return pointwise_cross(
                  f, g, padded ? DealiasMode::ThreeHalvesPad : DealiasMode::TwoThirdsTruncate);
          },
          py::arg("f"), py::arg("g"), py::arg("padded") = true);

    m.def("decompose", [](const VectorField& f) { return decompose(f); });
    m.def("recompose", [](const HelicalDecomposition& d) { return recompose(d); });
    m.def("band_project",
          [](const VectorField& f, double lo, double hi) {
              return band_project(f, make_interval(lo, hi));
          },
          py::arg("f"), py::arg("lo"), py::arg("hi"),
          "keep helical components with signed eigenvalue in (lo, hi]");
    m.def("spectral_moment",
          [](const VectorField& f, int p, double lo, double hi) {
              return spectral_moment(f, p, make_interval(lo, hi));
          },
          py::arg("f"), py::arg("p"), py::arg("lo"), py::arg("hi"));
    m.def("helical_energies", [](const VectorField& f) { return helical_energies(decompose(f)); },
          "(positive, negative) helicity-family energies");
    m.def("helicity_swap", [](const VectorField& f) { return helicity_swap(f); });

    m.def("nonlinear_rhs",
          [](const VectorField& v, bool padded) {
              return nonlinear_rhs(
                  v, padded ? DealiasMode::ThreeHalvesPad : DealiasMode::TwoThirdsTruncate);
          },
          py::arg("v"), py::arg("padded") = false);

    m.def("cancellation_residual", &cancellation_residual);
    m.def("vorticity_cross_term", &vorticity_cross_term);
    m.def("holder_chain_check", [](const VectorField& v) {
        const auto [lhs, rhs] = holder_chain_check(v);
        return std::make_pair(lhs, rhs);
    });
    m.def("criterion_integrands",
          [](const VectorField& v, double a) { return record_dict(criterion_integrands(v, a)); },
          py::arg("v"), py::arg("a") = 0.0);
    m.def("band_inequality_suite",
          [](const VectorField& v, double a, double c5) {
              const BandReport r = band_inequality_suite(v, a, c5);
              py::dict d;
              d["a"] = r.a;
              d["c5"] = r.c5;
              d["lhs_3_2"] = r.lhs_3_2;
              d["mid_3_2"] = r.mid_3_2;
              d["rhs_3_2"] = r.rhs_3_2;
              d["lhs_3_3"] = r.lhs_3_3;
              d["rhs_3_3"] = r.rhs_3_3;
              d["lhs_3_5"] = r.lhs_3_5;
              d["rhs_3_5"] = r.rhs_3_5;
              d["lhs_3_10"] = r.lhs_3_10;
              d["rhs_3_10"] = r.rhs_3_10;
              return d;
          },
          py::arg("v"), py::arg("a"), py::arg("c5"));
    m.def("probe_constants",
          [](int n, int size, std::uint64_t seed, int k_max) {
              const ConstantProbeReport r = probe_constants({GridSpec(n), seed, k_max}, size);
              py::dict d;
              d["c1_hat"] = r.c1_hat;
              d["c3_hat"] = r.c3_hat;
              d["c4_hat"] = r.c4_hat;
              d["ratio_2_17_min"] = r.ratio_2_17_min;
              d["ratio_2_17_median"] = r.ratio_2_17_median;
              d["ratio_2_17_p90"] = r.ratio_2_17_p90;
              d["ratio_2_17_max"] = r.ratio_2_17_max;
              d["size"] = r.size;
              d["skipped"] = r.skipped;
              d["seed"] = r.seed;
              d["n"] = r.n;
              d["ensemble"] = r.ensemble;
              return d;
          },
          py::arg("n"), py::arg("size") = 16, py::arg("seed") = 1, py::arg("k_max") = 4);

    m.def("simulate",
          [](const VectorField& v0, double nu, double t_end, double dt_max, double cfl,
             int output_every, const py::object& a_schedule, py::object c5) {
              SolverConfig cfg;
              cfg.nu = nu;
              cfg.t_end = t_end;
              cfg.dt_max = dt_max;
              cfg.cfl = cfl;
              cfg.output_every = output_every;
              const Schedule sched = schedule_from_object(a_schedule);
              const double c5v = c5.is_none() ? DiagnosticsRecord::unset : c5.cast<double>();
              const Trajectory traj = run_with_diagnostics(cfg, v0, sched, c5v);

              py::dict out;
              out["t"] = py::array_t<double>(py::ssize_t(traj.step_t.size()), traj.step_t.data());
              out["energy"] = py::array_t<double>(py::ssize_t(traj.step_energy.size()),
                                                  traj.step_energy.data());
              out["grad_sq"] = py::array_t<double>(py::ssize_t(traj.step_grad_sq.size()),
                                                   traj.step_grad_sq.data());
              out["dissipation"] = py::array_t<double>(py::ssize_t(traj.step_dissipation.size()),
                                                       traj.step_dissipation.data());
              py::list records;
              for (const auto& e : traj.entries) records.append(record_dict(e.record));
              out["records"] = records;
              return out;
          },
          py::arg("v0"), py::arg("nu") = 1.0, py::arg("t_end") = 1.0, py::arg("dt_max") = 0.01,
          py::arg("cfl") = 0.5, py::arg("output_every") = 1, py::arg("a_schedule") = py::none(),
          py::arg("c5") = py::none(),
          "advance v0 to t_end; returns per-step series and full diagnostics records");

    m.def("write_snapshot",
          [](const std::string& path, const VectorField& v, double t, double nu) {
              write_snapshot(path, SolverState{v, t}, nu);
          },
          py::arg("path"), py::arg("v"), py::arg("t") = 0.0, py::arg("nu") = 1.0);
    m.def("read_snapshot", [](const std::string& path) {
        const LoadedState s = read_snapshot(path);
        return py::make_tuple(s.state.v, s.state.t, s.nu, s.reprojected);
    }, py::arg("path"), "returns (field, t, nu, reprojected)");

    m.attr("__version__") = "0.1.0";
}
