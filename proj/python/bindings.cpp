#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "nhur/errors.hpp"
#include "nhur/linalg.hpp"
#include "nhur/metric.hpp"
#include "nhur/relations.hpp"
#include "nhur/scenarios.hpp"

namespace py = pybind11;
using namespace nhur;

namespace {

using CArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

Matrix to_matrix(const CArray& arr) {
    if (arr.ndim() != 2 || arr.shape(0) != arr.shape(1)) throw py::value_error("expected a square 2-D array");
    const auto n = static_cast<std::size_t>(arr.shape(0));
    const Complex* p = arr.data();
    return Matrix(n, std::vector<Complex>(p, p + n * n));
}

StateVector to_state(const CArray& arr) {
    if (arr.ndim() != 1) throw py::value_error("expected a 1-D array");
    const Complex* p = arr.data();
    return StateVector(std::vector<Complex>(p, p + arr.shape(0)));
}

py::array_t<Complex> from_matrix(const Matrix& m) {
    const auto n = static_cast<py::ssize_t>(m.dim());
    py::array_t<Complex> out({n, n});
    std::copy(m.data().begin(), m.data().end(), out.mutable_data());
    return out;
}

py::array_t<Complex> from_state(const StateVector& v) {
    py::array_t<Complex> out(static_cast<py::ssize_t>(v.dim()));
    std::copy(v.amplitudes().begin(), v.amplitudes().end(), out.mutable_data());
    return out;
}

Metric to_metric(const std::optional<CArray>& g, std::size_t dim) {
    return g ? Metric::from_matrix(to_matrix(*g)) : Metric::identity(dim);
}

Formalism formalism_arg(const std::string& s) {
    const auto f = parse_formalism(s);
    if (!f) throw py::value_error("unknown formalism '" + s + "'");
    return *f;
}

PtPhase phase_arg(const std::string& s) {
    if (s == "symmetric") return PtPhase::Symmetric;
    if (s == "broken") return PtPhase::Broken;
    throw py::value_error("unknown phase '" + s + "' (symmetric, broken)");
}

py::dict eval_dict(const UrEvaluation& e) {
    py::dict d;
    d["relation"] = std::string(to_string(e.relation));
    d["formalism"] = std::string(to_string(e.formalism));
    d["branch"] = std::string(to_string(e.branch));
    d["lhs"] = e.lhs;
    d["rhs"] = e.rhs;
    d["gap"] = e.gap;
    d["holds"] = e.holds;
    d["degenerate"] = e.degenerate;
    return d;
}

py::dict problem_dict(const Problem& p) {
    py::dict d;
    d["A"] = from_matrix(p.a);
    d["B"] = from_matrix(p.b);
    d["psi"] = from_state(p.psi);
    d["G"] = from_matrix(p.metric.matrix());
    return d;
}

py::list sweep_list(const std::vector<ScenarioPoint>& pts) {
    py::list out;
    for (const auto& p : pts) {
        py::dict d;
        d["param"] = p.param;
        py::list evs;
        for (const auto& e : p.evaluations) evs.append(eval_dict(e));
        d["evaluations"] = evs;
        d["error"] = p.error ? py::cast(*p.error) : py::none();
        out.append(d);
    }
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Sum uncertainty relations for non-Hermitian operators";

    py::register_exception<Error>(m, "NhurError", PyExc_ValueError);

    m.def("sigma_x", [] { return from_matrix(sigma_x()); });
    m.def("sigma_y", [] { return from_matrix(sigma_y()); });
    m.def("sigma_z", [] { return from_matrix(sigma_z()); });
    m.def("pt_hamiltonian", [](double gamma) { return from_matrix(pt_hamiltonian(gamma)); }, py::arg("gamma"));

    m.def(
        "pt_metric",
        [](double gamma, const std::string& phase) {
            const PtPhase ph = phase_arg(phase);
            return from_matrix(metric_from_right_eigenvectors(pt_eigensystem(gamma, ph), pt_hamiltonian(gamma)).matrix());
        },
        py::arg("gamma"), py::arg("phase"), "Eigenframe metric [sum |R><R|]^{-1} of H(gamma).");

    m.def(
        "validate_metric",
        [](const CArray& g, const std::optional<CArray>& h) {
            const auto r = validate_metric(to_matrix(g), h ? std::optional<Matrix>(to_matrix(*h)) : std::nullopt);
            py::dict d;
            d["hermitian"] = r.hermitian;
            d["positive_definite"] = r.positive_definite;
            d["min_eigenvalue"] = r.min_eigenvalue;
            d["stationarity_residual"] = r.stationarity_residual ? py::cast(*r.stationarity_residual) : py::none();
            return d;
        },
        py::arg("g"), py::arg("h") = py::none());

    m.def(
        "is_good_observable",
        [](const CArray& x, const CArray& g) {
            const auto r = is_good_observable(to_matrix(x), Metric::from_matrix(to_matrix(g)));
            return py::make_tuple(r.good, r.residual);
        },
        py::arg("x"), py::arg("g"));

    m.def(
        "g_expectation",
        [](const CArray& x, const CArray& psi, const std::optional<CArray>& g) {
            const StateVector s = to_state(psi);
            return g_expectation(to_matrix(x), s, to_metric(g, s.dim()));
        },
        py::arg("x"), py::arg("psi"), py::arg("g") = py::none());

    m.def(
        "g_variance",
        [](const CArray& x, const CArray& psi, const std::optional<CArray>& g) {
            const StateVector s = to_state(psi);
            return g_variance(to_matrix(x), s, to_metric(g, s.dim()));
        },
        py::arg("x"), py::arg("psi"), py::arg("g") = py::none());

    m.def(
        "g_covariance",
        [](const CArray& a, const CArray& b, const CArray& psi, const std::optional<CArray>& g) {
            const StateVector s = to_state(psi);
            return g_covariance(to_matrix(a), to_matrix(b), s, to_metric(g, s.dim()));
        },
        py::arg("a"), py::arg("b"), py::arg("psi"), py::arg("g") = py::none());

    m.def(
        "evaluate",
        [](const CArray& a, const CArray& b, const CArray& psi, const std::optional<CArray>& g,
           const std::string& formalism, const std::optional<CArray>& psi_perp) {
            const StateVector s = to_state(psi);
            std::optional<StateVector> perp;
            if (psi_perp) perp = to_state(*psi_perp);
            const Problem prob{to_matrix(a), to_matrix(b), s, to_metric(g, s.dim())};
            py::list out;
            for (const auto& e : evaluate_problem(prob, formalism_arg(formalism), perp)) out.append(eval_dict(e));
            return out;
        },
        py::arg("a"), py::arg("b"), py::arg("psi"), py::arg("g") = py::none(), py::arg("formalism") = "gmetric",
        py::arg("psi_perp") = py::none(), "UR1, UR2, UR3 (larger branch) and UR4 as a list of dicts.");

    m.def(
        "example1",
        [](double theta0, double theta1, double theta3, double theta5, double theta7) {
            return problem_dict(build_example1({theta0, theta1, theta3, theta5, theta7}));
        },
        py::arg("theta0"), py::arg("theta1") = Example1Config{}.theta1, py::arg("theta3") = Example1Config{}.theta3,
        py::arg("theta5") = Example1Config{}.theta5, py::arg("theta7") = Example1Config{}.theta7);

    m.def(
        "example2",
        [](double gamma, double p, double alpha, const std::string& phase) {
            return problem_dict(build_example2({gamma, p, alpha, phase_arg(phase)}));
        },
        py::arg("gamma"), py::arg("p"), py::arg("alpha"), py::arg("phase"));

    m.def(
        "sweep_example1",
        [](std::size_t points, const std::string& formalism) {
            const auto pts = sweep(
                [](double t) {
                    Example1Config c;
                    c.theta0 = t;
                    return build_example1(c);
                },
                0.0, std::numbers::pi, points, formalism_arg(formalism));
            return sweep_list(pts);
        },
        py::arg("points") = 721, py::arg("formalism") = "plain");

    m.def(
        "sweep_example2",
        [](const std::string& phase, std::size_t points, const std::string& formalism) {
            const PtPhase ph = phase_arg(phase);
            const Example2Config base =
                ph == PtPhase::Symmetric ? Example2Config::symmetric_defaults() : Example2Config::broken_defaults();
            const auto pts = sweep(
                [&](double a) {
                    Example2Config c = base;
                    c.alpha = a;
                    return build_example2(c);
                },
                0.0, 2 * std::numbers::pi, points, formalism_arg(formalism));
            return sweep_list(pts);
        },
        py::arg("phase") = "symmetric", py::arg("points") = 721, py::arg("formalism") = "good_observable");
}
