#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ghzsim/effective.hpp"
#include "ghzsim/spectrum.hpp"

namespace py = pybind11;
using namespace ghzsim;

namespace {

py::array_t<Complex> mat_to_np(const ComplexMatrix& m) {
    py::array_t<Complex> out({m.rows(), m.cols()});
    auto buf = out.mutable_unchecked<2>();
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) buf(i, j) = m(i, j);
    return out;
}

ComplexMatrix np_to_mat(const py::array_t<Complex, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 2) throw DimMismatch("expected a 2-d array");
    ComplexMatrix m(static_cast<int>(a.shape(0)), static_cast<int>(a.shape(1)));
    auto buf = a.unchecked<2>();
    for (py::ssize_t i = 0; i < a.shape(0); ++i)
        for (py::ssize_t j = 0; j < a.shape(1); ++j)
            m(static_cast<int>(i), static_cast<int>(j)) = buf(i, j);
    return m;
}

py::array_t<Complex> state_to_np(const PureState& s) {
    py::array_t<Complex> out(8);
    auto buf = out.mutable_unchecked<1>();
    for (int i = 0; i < 8; ++i) buf(i) = s.amplitudes[i];
    return out;
}

PureState np_to_state(const py::array_t<Complex, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 1 || a.shape(0) != 8) throw DimMismatch("expected 8 amplitudes");
    PureState s;
    auto buf = a.unchecked<1>();
    for (int i = 0; i < 8; ++i) s.amplitudes[i] = buf(i);
    return s;
}

std::vector<NamedTarget> to_targets(
    const std::vector<std::pair<std::string, py::array_t<Complex>>>& in) {
    std::vector<NamedTarget> out;
    for (const auto& [name, arr] : in) out.push_back({name, np_to_state(arr)});
    return out;
}

py::dict series_to_dict(const TimeSeries& ts) {
    py::dict d;
    d["times"] = py::array_t<double>(py::cast(ts.times));
    py::dict pops;
    for (int k = 0; k < 8; ++k)
        pops[py::str(basis_label(k))] = py::array_t<double>(py::cast(ts.populations[k]));
    d["populations"] = pops;
    py::dict fids;
    for (size_t i = 0; i < ts.target_names.size(); ++i)
        fids[py::str(ts.target_names[i])] = py::array_t<double>(py::cast(ts.fidelities[i]));
    d["fidelities"] = fids;
    d["tau3"] = py::array_t<double>(py::cast(ts.tau3));
    d["tau2"] = py::array_t<double>(py::cast(ts.tau2));
    d["purity"] = py::array_t<double>(py::cast(ts.purity));
    d["trace_error"] = py::array_t<double>(py::cast(ts.trace_error));
    d["renorm_count"] = ts.renorm_count;
    return d;
}

}  // namespace

PYBIND11_MODULE(_ghzsim, m) {
    m.doc() = "Three coupled charge qubits: Hamiltonians, unitary/dephasing dynamics, "
              "entanglement quantifiers, and the effective two-level model.";

    m.attr("HBAR_UEV_NS") = kHbar;
    m.attr("PLANCK_UEV_NS") = kPlanck;

    py::register_exception<Error>(m, "GhzsimError");

    py::class_<QubitParams>(m, "QubitParams")
        .def(py::init([](std::array<double, 3> epsilon, std::array<double, 3> delta, double j12,
                         double j23) {
                 QubitParams p;
                 p.epsilon = epsilon;
                 p.delta = delta;
                 p.j12 = j12;
                 p.j23 = j23;
                 return p;
             }),
             py::arg("epsilon") = std::array<double, 3>{0, 0, 0},
             py::arg("delta") = std::array<double, 3>{0, 0, 0}, py::arg("j12") = 0.0,
             py::arg("j23") = 0.0)
        .def_readwrite("epsilon", &QubitParams::epsilon)
        .def_readwrite("delta", &QubitParams::delta)
        .def_readwrite("j12", &QubitParams::j12)
        .def_readwrite("j23", &QubitParams::j23);

    py::class_<SixDotParams>(m, "SixDotParams")
        .def(py::init([](std::array<double, 6> e, std::array<double, 3> v,
                         std::array<double, 8> u) {
                 SixDotParams p;
                 p.site_energies = e;
                 p.tunnelings = v;
                 p.coulomb = u;
                 return p;
             }),
             py::arg("site_energies") = std::array<double, 6>{},
             py::arg("tunnelings") = std::array<double, 3>{},
             py::arg("coulomb") = std::array<double, 8>{})
        .def_readwrite("site_energies", &SixDotParams::site_energies)
        .def_readwrite("tunnelings", &SixDotParams::tunnelings)
        .def_readwrite("coulomb", &SixDotParams::coulomb);

    py::class_<TimeGrid>(m, "TimeGrid")
        .def(py::init([](double t_start, double t_end, double dt, int sample_every) {
                 TimeGrid g{t_start, t_end, dt, sample_every};
                 g.validate();
                 return g;
             }),
             py::arg("t_start") = 0.0, py::arg("t_end"), py::arg("dt") = 1e-3,
             py::arg("sample_every") = 50)
        .def_readwrite("t_start", &TimeGrid::t_start)
        .def_readwrite("t_end", &TimeGrid::t_end)
        .def_readwrite("dt", &TimeGrid::dt)
        .def_readwrite("sample_every", &TimeGrid::sample_every);

    py::class_<TangleReport>(m, "TangleReport")
        .def_readonly("tau_one_to_rest", &TangleReport::tau_one_to_rest)
        .def_readonly("tau_ab", &TangleReport::tau_ab)
        .def_readonly("tau_ac", &TangleReport::tau_ac)
        .def_readonly("tau3", &TangleReport::tau3)
        .def_readonly("tau2", &TangleReport::tau2)
        .def("__repr__", [](const TangleReport& r) {
            return "TangleReport(tau3=" + std::to_string(r.tau3) +
                   ", tau2=" + std::to_string(r.tau2) + ")";
        });

    py::class_<EffectiveModel>(m, "EffectiveModel")
        .def_readonly("omega", &EffectiveModel::omega)
        .def_readonly("e_a", &EffectiveModel::e_a)
        .def_readonly("a_labels", &EffectiveModel::a_labels)
        .def_readonly("formation_time_ns", &EffectiveModel::formation_time_ns);

    // numerics
    m.def("kron", [](const py::array_t<Complex>& a, const py::array_t<Complex>& b) {
        return mat_to_np(kron(np_to_mat(a), np_to_mat(b)));
    });
    m.def("hermitian_eig", [](const py::array_t<Complex>& a) {
        const EigenDecomposition ed = hermitian_eig(np_to_mat(a));
        return py::make_tuple(py::array_t<double>(py::cast(ed.eigenvalues)),
                              mat_to_np(ed.eigenvectors));
    });
    m.def("matrix_sqrt_psd",
          [](const py::array_t<Complex>& a) { return mat_to_np(matrix_sqrt_psd(np_to_mat(a))); });
    m.def("partial_trace", [](const py::array_t<Complex>& rho, const std::set<int>& keep) {
        return mat_to_np(partial_trace(np_to_mat(rho), keep));
    });
    m.def("frobenius_distance", [](const py::array_t<Complex>& a, const py::array_t<Complex>& b) {
        return frobenius_distance(np_to_mat(a), np_to_mat(b));
    });

    // model
    m.def("build_h3", [](const QubitParams& p) { return mat_to_np(build_h3(p)); });
    m.def("build_h6", [](const SixDotParams& p) { return mat_to_np(build_h6(p)); });
    m.def("project_to_qubit_subspace",
          [](const py::array_t<Complex>& h6) { return mat_to_np(project_to_qubit_subspace(np_to_mat(h6))); });
    m.def("map_params", [](const SixDotParams& p) {
        auto [qp, offset] = map_params(p);
        return py::make_tuple(qp, offset);
    });
    m.def("h0_and_v_split", [](const QubitParams& p) {
        auto [h0, v] = h0_and_v_split(p);
        return py::make_tuple(mat_to_np(h0), mat_to_np(v));
    });
    m.def("ghz_state", [](double phi) { return state_to_np(ghz_state(phi)); }, py::arg("phi") = 0.0);
    m.def("flip_state", [](double phi) { return state_to_np(flip_state(phi)); }, py::arg("phi") = 0.0);
    m.def("basis_state", [](const std::string& label) { return state_to_np(basis_state(label)); });

    // dynamics
    m.def(
        "evolve_unitary",
        [](const py::array_t<Complex>& h, const py::array_t<Complex>& rho0, const TimeGrid& grid,
           const std::vector<std::pair<std::string, py::array_t<Complex>>>& targets,
           const std::string& method) {
            const UnitaryMethod um =
                (method == "rk4") ? UnitaryMethod::Rk4 : UnitaryMethod::ExactPropagator;
            return series_to_dict(evolve_unitary(np_to_mat(h), DensityMatrix(np_to_mat(rho0)),
                                                 grid, to_targets(targets), um));
        },
        py::arg("h"), py::arg("rho0"), py::arg("grid"),
        py::arg("targets") = std::vector<std::pair<std::string, py::array_t<Complex>>>{},
        py::arg("method") = "exact");
    m.def(
        "evolve_lindblad",
        [](const py::array_t<Complex>& h, const py::array_t<Complex>& rho0, const TimeGrid& grid,
           const std::array<double, 8>& gamma_ghz,
           const std::vector<std::pair<std::string, py::array_t<Complex>>>& targets) {
            DephasingConfig deph;
            deph.gamma = gamma_ghz;
            return series_to_dict(evolve_lindblad(np_to_mat(h), DensityMatrix(np_to_mat(rho0)),
                                                  grid, deph, to_targets(targets)));
        },
        py::arg("h"), py::arg("rho0"), py::arg("grid"), py::arg("gamma_ghz"),
        py::arg("targets") = std::vector<std::pair<std::string, py::array_t<Complex>>>{});
    m.def("population", [](const py::array_t<Complex>& rho, const std::string& label) {
        return population(DensityMatrix(np_to_mat(rho)), label);
    });

    // entanglement
    m.def("fidelity", [](const py::array_t<Complex>& rho, const py::array_t<Complex>& target) {
        return fidelity(np_to_mat(rho), np_to_state(target));
    });
    m.def("tau_one_to_rest", [](const py::array_t<Complex>& rho, int pivot) {
        return tau_one_to_rest(np_to_mat(rho), pivot);
    });
    m.def("tau_pair", [](const py::array_t<Complex>& rho, int a, int b) {
        return tau_pair(np_to_mat(rho), a, b);
    });
    m.def(
        "tangle_report",
        [](const py::array_t<Complex>& rho, int pivot) { return tangle_report(np_to_mat(rho), pivot); },
        py::arg("rho"), py::arg("pivot") = 1);

    // effective model
    m.def(
        "omega_numeric",
        [](const QubitParams& p, const std::array<std::string, 2>& a_labels,
           const std::string& method) {
            const OmegaMethod om = (method == "exact_resolvent") ? OmegaMethod::ExactResolvent
                                                                 : OmegaMethod::ThirdOrder;
            return omega_numeric(p, a_labels, om);
        },
        py::arg("params"), py::arg("a_labels") = std::array<std::string, 2>{"000", "111"},
        py::arg("method") = "third_order");
    m.def("omega_closed_form", &omega_closed_form, py::arg("delta"), py::arg("j"));
    m.def("formation_time", &formation_time, py::arg("delta"), py::arg("j"));
    m.def("make_effective_model", &make_effective_model, py::arg("params"),
          py::arg("a_labels") = std::array<std::string, 2>{"000", "111"});
    m.def(
        "evolve_effective",
        [](const EffectiveModel& model, const std::string& initial, const TimeGrid& grid) {
            return series_to_dict(evolve_effective(model, initial, grid));
        },
        py::arg("model"), py::arg("initial"), py::arg("grid"));

    // spectrum / sweeps
    m.def("sweep_spectrum", [](double j, const std::vector<double>& deltas) {
        py::list rows;
        for (const auto& r : sweep_spectrum(j, deltas)) {
            py::dict d;
            d["delta"] = r.delta;
            d["evals_over_j"] = r.evals_over_j;
            d["fid_6th_ghz_pi"] = r.fid_6th_ghz_pi;
            d["fid_7th_ghz_0"] = r.fid_7th_ghz_0;
            d["fid_ground_flip_pi"] = r.fid_ground_flip_pi;
            d["fid_1st_flip_0"] = r.fid_1st_flip_0;
            rows.append(d);
        }
        return rows;
    });
    m.def("formation_time_sweep", [](double j, const std::vector<double>& deltas) {
        py::list rows;
        for (const auto& r : formation_time_sweep(j, deltas)) {
            py::dict d;
            d["delta"] = r.delta;
            d["t_formula"] = r.t_formula;
            d["t_exact"] = r.t_exact;
            d["peak_fidelity"] = r.peak_fidelity;
            rows.append(d);
        }
        return rows;
    });
}
