#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cmldde/dde_sim.hpp"
#include "cmldde/errors.hpp"
#include "cmldde/explorer.hpp"
#include "cmldde/hopf.hpp"
#include "cmldde/linear_analysis.hpp"
#include "cmldde/model.hpp"
#include "cmldde/x_solver.hpp"

namespace py = pybind11;
using namespace cmldde;

namespace {

py::array_t<double> to_array(std::span<const double> v) {
    py::array_t<double> a(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), a.mutable_data());
    return a;
}

py::array_t<double> node_times(const Trajectory& tr) {
    py::array_t<double> a(static_cast<py::ssize_t>(tr.size()));
    double* out = a.mutable_data();
    for (std::size_t i = 0; i < tr.size(); ++i) out[i] = tr.time(i);
    return a;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "C++ core of cmldde";

    // Derived types are registered after their bases so they are matched first.
    auto domain = py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<PreconditionError>(m, "PreconditionError", domain.ptr());
    py::register_exception<NoHopf>(m, "NoHopf", domain.ptr());
    py::register_exception<NotFound>(m, "NotFound", PyExc_RuntimeError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init([](double n, double beta0, double delta, double k, double r) {
                 return ModelParams(ParamValues{n, beta0, delta, k, r});
             }),
             py::kw_only(), py::arg("n") = 2.0, py::arg("beta0") = 2.5, py::arg("delta") = 0.0015,
             py::arg("k") = 1.01, py::arg("r") = 7.55)
        .def_property_readonly("n", &ModelParams::n)
        .def_property_readonly("beta0", &ModelParams::beta0)
        .def_property_readonly("delta", &ModelParams::delta)
        .def_property_readonly("k", &ModelParams::k)
        .def_property_readonly("r", &ModelParams::r)
        .def_property_readonly("gamma", &ModelParams::gamma)
        .def("with_delay", &ModelParams::with_delay, py::arg("r"))
        .def("__repr__", [](const ModelParams& p) {
            return "ModelParams(n=" + py::repr(py::float_(p.n())).cast<std::string>() +
                   ", beta0=" + py::repr(py::float_(p.beta0())).cast<std::string>() +
                   ", delta=" + py::repr(py::float_(p.delta())).cast<std::string>() +
                   ", k=" + py::repr(py::float_(p.k())).cast<std::string>() +
                   ", r=" + py::repr(py::float_(p.r())).cast<std::string>() + ")";
        });

    py::class_<Equilibrium>(m, "Equilibrium")
        .def_readonly("x", &Equilibrium::x_star)
        .def_readonly("y", &Equilibrium::y_star)
        .def_property_readonly("kind", [](const Equilibrium& e) {
            return e.kind == EquilibriumKind::Trivial ? "trivial" : "positive";
        });
    m.def("equilibria", &equilibria, py::arg("params"));
    m.def(
        "b1_coefficient", [](const ModelParams& p) { return b1_coefficient(p).b1; },
        py::arg("params"));

    py::class_<StabilityVerdict>(m, "StabilityVerdict")
        .def_property_readonly("state",
                               [](const StabilityVerdict& v) { return std::string(to_string(v.state)); })
        .def_property_readonly("source",
                               [](const StabilityVerdict& v) { return std::string(to_string(v.source)); })
        .def_readonly("omega0", &StabilityVerdict::omega0)
        .def_readonly("r_lower", &StabilityVerdict::r_lower)
        .def_readonly("r_upper", &StabilityVerdict::r_upper)
        .def_readonly("r_hopf", &StabilityVerdict::r_hopf);
    m.def("classify_trivial", &classify_trivial, py::arg("params"));
    m.def("classify_positive", &classify_positive, py::arg("params"));
    m.def("omega0", py::overload_cast<const ModelParams&>(&omega0), py::arg("params"));
    m.def(
        "leading_roots",
        [](const ModelParams& p, int count) {
            std::vector<std::complex<double>> out;
            for (const auto& z : leading_roots(p, count).roots) out.emplace_back(z.re, z.im);
            return out;
        },
        py::arg("params"), py::arg("count") = 3);

    m.def("hopf_delay", &hopf_delay, py::arg("n"), py::arg("beta0"), py::arg("k"), py::arg("delta"));
    m.def("hopf_omega", &hopf_omega, py::arg("n"), py::arg("beta0"), py::arg("k"), py::arg("delta"));
    m.def(
        "surface_grid",
        [](double n, double beta0, std::pair<double, double> k_range,
           std::pair<double, double> delta_range, std::size_t k_res, std::size_t delta_res) {
            const SurfaceGrid g = surface_grid(n, beta0, {k_range.first, k_range.second},
                                               {delta_range.first, delta_range.second}, k_res,
                                               delta_res);
            py::array_t<double> r({static_cast<py::ssize_t>(k_res), static_cast<py::ssize_t>(delta_res)});
            auto view = r.mutable_unchecked<2>();
            for (std::size_t i = 0; i < k_res; ++i) {
                for (std::size_t j = 0; j < delta_res; ++j) {
                    view(i, j) = g.at(i, j).r_hopf.value_or(std::nan(""));
                }
            }
            return r;
        },
        py::arg("n"), py::arg("beta0"), py::arg("k_range"), py::arg("delta_range"),
        py::arg("k_res"), py::arg("delta_res"),
        "r_H on a k-by-delta grid (rows: k); NaN where the boundary does not exist.");
    m.def("embedded_tables", [] {
        py::list rows;
        for (const auto& r : embedded_bautin_rows()) {
            rows.append(py::dict(py::arg("n") = r.n, py::arg("beta0") = r.beta0, py::arg("k") = r.k,
                                 py::arg("delta") = r.delta, py::arg("r") = r.r, py::arg("l2") = r.l2));
        }
        return rows;
    });
    m.def(
        "verify_table",
        [](double rel_tol, const std::string& path) {
            const auto rows = path.empty() ? embedded_bautin_rows() : load_bautin_csv(path);
            py::list out;
            for (const auto& c : verify_table(rows, rel_tol)) {
                out.append(py::dict(py::arg("beta0") = c.row.beta0, py::arg("k") = c.row.k,
                                    py::arg("delta") = c.row.delta, py::arg("r_table") = c.row.r,
                                    py::arg("r_computed") = c.r_computed,
                                    py::arg("rel_err") = c.rel_err, py::arg("pass") = c.pass));
            }
            return out;
        },
        py::arg("rel_tol") = 1e-4, py::arg("path") = "");

    py::class_<HistoryFunction>(m, "History")
        .def("__call__", &HistoryFunction::value, py::arg("s"))
        .def("slope", &HistoryFunction::slope, py::arg("s"))
        .def_property_readonly("delay", &HistoryFunction::delay);
    m.def(
        "constant_history",
        [](double value, double r) { return HistoryFunction(ConstantHistory{value}, r); },
        py::arg("value"), py::arg("r"));
    m.def("eigenmode_history", &eigenmode_history, py::arg("params"), py::arg("c"));

    py::class_<Trajectory>(m, "Trajectory")
        .def_property_readonly("t", &node_times)
        .def_property_readonly("values", [](const Trajectory& t) { return to_array(t.values()); })
        .def_property_readonly("slopes", [](const Trajectory& t) { return to_array(t.slopes()); })
        .def_property_readonly("step", &Trajectory::step)
        .def_property_readonly("t_begin", &Trajectory::t_begin)
        .def_property_readonly("t_end", &Trajectory::t_end)
        .def("__call__", &Trajectory::eval, py::arg("t"))
        .def("__len__", &Trajectory::size);

    m.def(
        "integrate_y",
        [](const ModelParams& p, const HistoryFunction& h, double t_end, std::optional<double> dt) {
            py::gil_scoped_release release;
            return dt ? integrate_y(p, h, t_end, *dt) : integrate_y(p, h, t_end);
        },
        py::arg("params"), py::arg("history"), py::arg("t_end"), py::arg("dt") = py::none());
    m.def(
        "integrate_x",
        [](const ModelParams& p, const Trajectory& y, double x0, double t_end) {
            py::gil_scoped_release release;
            return integrate_x(p, y, x0, t_end);
        },
        py::arg("params"), py::arg("y"), py::arg("x0"), py::arg("t_end"));
    m.def(
        "periodic_x0",
        [](const ModelParams& p, const Trajectory& y, double t_start, double period) {
            return periodic_x0(p, y, t_start, period).x0;
        },
        py::arg("params"), py::arg("y"), py::arg("t_start"), py::arg("period"));

    py::class_<ConvergenceReport>(m, "ConvergenceReport")
        .def_readonly("sup_distance", &ConvergenceReport::sup_distance)
        .def_readonly("previous_sup", &ConvergenceReport::previous_sup)
        .def_readonly("decaying", &ConvergenceReport::decaying);
    m.def("convergence_check",
          py::overload_cast<const Trajectory&, double, double>(&convergence_check),
          py::arg("trajectory"), py::arg("target"), py::arg("window"));

    py::class_<CycleEstimate>(m, "CycleEstimate")
        .def_readonly("amplitude", &CycleEstimate::amplitude)
        .def_readonly("period", &CycleEstimate::period)
        .def_readonly("steady", &CycleEstimate::steady);
    m.def("cycle_estimate", &cycle_estimate, py::arg("trajectory"), py::arg("t_transient"),
          py::arg("t_stop") = py::none());

    py::class_<OrbitClass>(m, "OrbitClass")
        .def_property_readonly("kind", [](const OrbitClass& o) { return std::string(to_string(o.kind)); })
        .def_readonly("cycle", &OrbitClass::cycle)
        .def_property_readonly("escaped", &OrbitClass::escaped)
        .def_property_readonly("sup_distance", [](const OrbitClass& o) {
            return std::vector<double>(o.sup_distance, o.sup_distance + 3);
        })
        .def_property_readonly("amplitude", [](const OrbitClass& o) {
            return std::vector<double>(o.amplitude, o.amplitude + 3);
        });
    m.def(
        "classify_orbit",
        [](const Trajectory& tr, double v_star, double horizon) {
            return classify_orbit(tr, v_star, horizon);
        },
        py::arg("trajectory"), py::arg("v_star"), py::arg("horizon"));

    py::class_<ScanReport>(m, "ScanReport")
        .def_readonly("c_converge", &ScanReport::c_converge)
        .def_readonly("c_escape", &ScanReport::c_escape)
        .def_property_readonly("probes", [](const ScanReport& r) {
            py::list out;
            for (const auto& p : r.probes) {
                out.append(py::make_tuple(p.c, std::string(to_string(p.orbit.kind)), p.horizon));
            }
            return out;
        });
    m.def(
        "bistability_scan",
        [](const ModelParams& p, double c_lo, double c_hi, double tol, double horizon) {
            py::gil_scoped_release release;
            return bistability_scan(p, c_lo, c_hi, tol, horizon);
        },
        py::arg("params"), py::arg("c_lo"), py::arg("c_hi"), py::arg("tol"), py::arg("horizon"));

    py::class_<CriticalityReport>(m, "CriticalityReport")
        .def_readonly("r_hopf", &CriticalityReport::r_hopf)
        .def_readonly("slope", &CriticalityReport::slope)
        .def_readonly("intercept", &CriticalityReport::intercept)
        .def_readonly("r_squared", &CriticalityReport::r_squared)
        .def_property_readonly("verdict", [](const CriticalityReport& r) {
            return std::string(to_string(r.verdict));
        })
        .def_property_readonly("amplitudes", [](const CriticalityReport& r) {
            std::vector<std::pair<double, double>> out;
            for (const auto& s : r.sides) out.emplace_back(s.offset, s.amplitude);
            return out;
        });
    m.def(
        "criticality_probe",
        [](double n, double beta0, double k, double delta, const std::vector<double>& offsets,
           double horizon, double perturbation) {
            py::gil_scoped_release release;
            return criticality_probe(n, beta0, k, delta, offsets, horizon, perturbation);
        },
        py::arg("n"), py::arg("beta0"), py::arg("k"), py::arg("delta"), py::arg("offsets"),
        py::arg("horizon"), py::arg("perturbation") = 0.01);

    py::class_<ZoneReport>(m, "ZoneReport")
        .def_property_readonly("zone", [](const ZoneReport& z) { return std::string(to_string(z.zone)); })
        .def_readonly("equilibrium_stable", &ZoneReport::equilibrium_stable)
        .def_property_readonly("probe_kinds", [](const ZoneReport& z) {
            std::vector<std::string> out;
            for (const auto& p : z.probes) out.emplace_back(to_string(p.orbit.kind));
            return out;
        });
    m.def(
        "zone_classify",
        [](const ModelParams& p, const std::vector<double>& probes, double horizon) {
            py::gil_scoped_release release;
            return zone_classify(p, probes, horizon);
        },
        py::arg("params"), py::arg("probe_c_values"), py::arg("horizon"));
}
