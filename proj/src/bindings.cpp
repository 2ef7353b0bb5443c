#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mpbvp/errors.hpp"
#include "mpbvp/fucik.hpp"
#include "mpbvp/io.hpp"
#include "mpbvp/jumping_profile.hpp"
#include "mpbvp/problem_spec.hpp"
#include "mpbvp/shooting.hpp"
#include "mpbvp/solvability.hpp"
#include "mpbvp/spectrum.hpp"
#include "mpbvp/verification.hpp"

namespace py = pybind11;
using namespace mpbvp;

PYBIND11_MODULE(_core, m) {
    m.doc() = "half-eigenvalues, Fucik curves, solvability certificates and nodal "
              "solutions for -u'' = lambda(a u+ - b u-) with multi-point boundary "
              "conditions";

    static py::exception<Error> exc_error(m, "Error");
    py::register_exception<InvalidProblem>(m, "InvalidProblem", exc_error);
    py::register_exception<NonPositiveGamma>(m, "NonPositiveGamma", exc_error);
    py::register_exception<BoundaryCriticalPoint>(m, "BoundaryCriticalPoint", exc_error);
    py::register_exception<RootCountMismatch>(m, "RootCountMismatch", exc_error);
    py::register_exception<IncompleteSpectrum>(m, "IncompleteSpectrum", exc_error);
    py::register_exception<BranchMismatch>(m, "BranchMismatch", exc_error);
    py::register_exception<BlowUp>(m, "BlowUp", exc_error);
    py::register_exception<NotSplitInterval>(m, "NotSplitInterval", exc_error);
    py::register_exception<ConditionFails>(m, "ConditionFails", exc_error);
    py::register_exception<BranchLost>(m, "BranchLost", exc_error);

    py::class_<NodalClass>(m, "NodalClass")
        .def(py::init<int, int>(), py::arg("k"), py::arg("nu"))
        .def_readonly("k", &NodalClass::k)
        .def_readonly("nu", &NodalClass::nu)
        .def("__eq__", [](const NodalClass& a, const NodalClass& b) { return a == b; })
        .def("__repr__", [](const NodalClass& c) {
            return "NodalClass(k=" + std::to_string(c.k) +
                   ", nu=" + std::to_string(c.nu) + ")";
        });

    py::class_<PhasePoint>(m, "PhasePoint")
        .def_property_readonly("value", &PhasePoint::value)
        .def_property_readonly("period", &PhasePoint::period)
        .def("__repr__", [](const PhasePoint& p) {
            return "PhasePoint(" + std::to_string(p.value()) + " mod " +
                   std::to_string(p.period()) + ")";
        });

    py::class_<ProblemSpec>(m, "ProblemSpec")
        .def(py::init<std::vector<double>, std::vector<double>, std::vector<double>,
                      std::vector<double>, bool>(),
             py::arg("alpha_minus"), py::arg("eta_minus"), py::arg("alpha_plus"),
             py::arg("eta_plus"), py::arg("allow_outside_cone") = false)
        .def_static("dirichlet", &ProblemSpec::dirichlet)
        .def_property_readonly("alpha_minus",
                               [](const ProblemSpec& s) { return s.alpha_minus(); })
        .def_property_readonly("eta_minus",
                               [](const ProblemSpec& s) { return s.eta_minus(); })
        .def_property_readonly("alpha_plus",
                               [](const ProblemSpec& s) { return s.alpha_plus(); })
        .def_property_readonly("eta_plus",
                               [](const ProblemSpec& s) { return s.eta_plus(); })
        .def_property_readonly("in_a_plus", &ProblemSpec::in_a_plus);

    py::class_<HalfEigenvalue>(m, "HalfEigenvalue")
        .def_readonly("k", &HalfEigenvalue::k)
        .def_readonly("nu", &HalfEigenvalue::nu)
        .def_readonly("lam", &HalfEigenvalue::lambda)
        .def_readonly("s", &HalfEigenvalue::s)
        .def_readonly("delta", &HalfEigenvalue::delta)
        .def_readonly("residual", &HalfEigenvalue::residual)
        .def("__repr__", [](const HalfEigenvalue& h) {
            return "HalfEigenvalue(k=" + std::to_string(h.k) +
                   ", nu=" + std::to_string(h.nu) + ", lam=" + std::to_string(h.lambda) +
                   ")";
        });

    py::class_<FucikSample>(m, "FucikSample")
        .def_readonly("k", &FucikSample::k)
        .def_readonly("nu", &FucikSample::nu)
        .def_readonly("theta", &FucikSample::theta)
        .def_readonly("lam", &FucikSample::lambda)
        .def_readonly("a", &FucikSample::point_a)
        .def_readonly("b", &FucikSample::point_b);

    py::enum_<IntervalKind>(m, "IntervalKind")
        .value("gap", IntervalKind::gap)
        .value("split", IntervalKind::split)
        .value("near_half_eigenvalue", IntervalKind::near_half_eigenvalue);

    py::class_<LambdaClassification>(m, "LambdaClassification")
        .def_readonly("kind", &LambdaClassification::kind)
        .def_readonly("k", &LambdaClassification::k)
        .def_readonly("degree", &LambdaClassification::degree)
        .def_readonly("b_sign", &LambdaClassification::b_sign)
        .def_readonly("lower", &LambdaClassification::lower)
        .def_readonly("upper", &LambdaClassification::upper);

    py::class_<ForcingFunction>(m, "ForcingFunction")
        .def_readonly("x0", &ForcingFunction::x0)
        .def_readonly("level", &ForcingFunction::level)
        .def("__call__", &ForcingFunction::operator());

    py::class_<Forcing>(m, "Forcing")
        .def_static("zero", &Forcing::zero)
        .def_static("one", &Forcing::one)
        .def_static("step", &Forcing::step, py::arg("x0"), py::arg("level") = -1.0)
        .def_static("samples", &Forcing::samples, py::arg("x"), py::arg("h"))
        .def_static("scaled", &Forcing::scaled, py::arg("base"), py::arg("factor"))
        .def("__call__", [](const Forcing& f, double x) { return f.eval(x); });

    py::class_<Nonlinearity>(m, "Nonlinearity")
        .def_static("linear", &Nonlinearity::linear, py::arg("c"))
        .def_static("rational_bump", &Nonlinearity::rational_bump, py::arg("f0"),
                    py::arg("finf"))
        .def_static("atan_shift", &Nonlinearity::atan_shift, py::arg("finf"),
                    py::arg("fminf"), py::arg("amp"))
        .def_readonly("f0", &Nonlinearity::f0)
        .def_readonly("f_plus_inf", &Nonlinearity::f_plus_inf)
        .def_readonly("f_minus_inf", &Nonlinearity::f_minus_inf)
        .def("__call__", [](const Nonlinearity& nl, double s) { return nl.f(s); });

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("grid", &Trajectory::grid)
        .def_readonly("values", &Trajectory::values)
        .def_readonly("derivatives", &Trajectory::derivatives)
        .def("value_at", &Trajectory::value_at)
        .def("derivative_at", &Trajectory::derivative_at)
        .def("amplitude", &Trajectory::amplitude)
        .def("sup_distance", &Trajectory::sup_distance);

    py::class_<ShootingState>(m, "ShootingState")
        .def_readonly("c", &ShootingState::c)
        .def_readonly("d", &ShootingState::d)
        .def_readonly("residual_minus", &ShootingState::residual_minus)
        .def_readonly("residual_plus", &ShootingState::residual_plus);

    py::class_<ShootResult>(m, "ShootResult")
        .def_readonly("trajectory", &ShootResult::trajectory)
        .def_readonly("state", &ShootResult::state)
        .def_readonly("nodal", &ShootResult::nodal);

    py::class_<BranchPoint>(m, "BranchPoint")
        .def_readonly("lam", &BranchPoint::lambda)
        .def_readonly("amplitude", &BranchPoint::amplitude)
        .def_readonly("c", &BranchPoint::c)
        .def_readonly("d", &BranchPoint::d);

    py::class_<CheckResult>(m, "CheckResult")
        .def_readonly("name", &CheckResult::name)
        .def_readonly("passed", &CheckResult::passed)
        .def_readonly("observed", &CheckResult::observed)
        .def_readonly("bound", &CheckResult::bound)
        .def_readonly("detail", &CheckResult::detail);

    m.def(
        "half_eigenvalues",
        [](const ProblemSpec& spec, double a, double b, int k_max) {
            return half_eigenvalues(spec, a, b, k_max);
        },
        py::arg("spec"), py::arg("a"), py::arg("b"), py::arg("k_max"));
    m.def(
        "linear_eigenvalues",
        [](const ProblemSpec& spec, int k_max) { return linear_eigenvalues(spec, k_max); },
        py::arg("spec"), py::arg("k_max"));
    m.def(
        "eigenfunction_samples",
        [](double a, double b, const HalfEigenvalue& he, const std::vector<double>& grid) {
            return eigenfunction_samples(profile_for_coefficients(a, b), he, grid);
        },
        py::arg("a"), py::arg("b"), py::arg("record"), py::arg("grid"));
    m.def(
        "trace_all",
        [](const ProblemSpec& spec, int k_max, int grid) {
            return trace_all(spec, k_max, default_theta_grid(grid));
        },
        py::arg("spec"), py::arg("k_max"), py::arg("grid") = 101);
    m.def(
        "diagonal_crossing",
        [](const ProblemSpec& spec, int k) { return diagonal_crossing(spec, k); },
        py::arg("spec"), py::arg("k"));
    m.def(
        "classify_lambda",
        [](const ProblemSpec& spec, double a, double b, double lambda) {
            return classify_lambda(spec, a, b, lambda);
        },
        py::arg("spec"), py::arg("a"), py::arg("b"), py::arg("lam"));
    m.def(
        "nonsolvable_forcing",
        [](const ProblemSpec& spec, double a, double b, double lambda) {
            return nonsolvable_forcing(spec, a, b, lambda);
        },
        py::arg("spec"), py::arg("a"), py::arg("b"), py::arg("lam"));
    m.def("multistart_lattice", &multistart_lattice, py::arg("n") = 21,
          py::arg("lo") = -10.0, py::arg("hi") = 10.0);
    m.def(
        "solve_halflinear",
        [](const ProblemSpec& spec, double a, double b, double lambda, const Forcing& h,
           const std::vector<std::pair<double, double>>& starts) {
            return solve_halflinear(spec, a, b, lambda, h, starts);
        },
        py::arg("spec"), py::arg("a"), py::arg("b"), py::arg("lam"), py::arg("h"),
        py::arg("starts"));
    m.def(
        "solve_nonlinear",
        [](const ProblemSpec& spec, const Nonlinearity& nl, const Forcing& h,
           const std::vector<std::pair<double, double>>& starts) {
            return solve_nonlinear(spec, nl, h, starts);
        },
        py::arg("spec"), py::arg("nl"), py::arg("h"), py::arg("starts"));
    m.def(
        "continue_branch",
        [](const ProblemSpec& spec, const Nonlinearity& nl, int k, int nu, int max_steps) {
            return continue_branch(spec, nl, k, nu, max_steps);
        },
        py::arg("spec"), py::arg("nl"), py::arg("k"), py::arg("nu"),
        py::arg("max_steps") = 200);
    m.def(
        "find_nodal",
        [](const ProblemSpec& spec, const Nonlinearity& nl, int k, int nu) {
            return find_nodal(spec, nl, k, nu);
        },
        py::arg("spec"), py::arg("nl"), py::arg("k"), py::arg("nu"));
    m.def("parse_forcing", &parse_forcing, py::arg("text"));
    m.def("parse_nonlinearity", &parse_nonlinearity, py::arg("text"));
    m.def("verify_examples", &verify_examples);
}
