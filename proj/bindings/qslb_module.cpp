#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qslb/bounds.hpp"
#include "qslb/errors.hpp"
#include "qslb/models.hpp"
#include "qslb/quantum.hpp"
#include "qslb/report_io.hpp"
#include "qslb/search.hpp"

namespace py = pybind11;
using namespace qslb;

PYBIND11_MODULE(_core, m) {
    m.doc() = "bound laws of unitary quantum evolution";

    // Later-registered translators run first, so the specific kinds are
    // registered after the catch-all base.
    auto base = py::register_exception<Error>(m, "Error");
    py::register_exception<ZeroDeltaE>(m, "ZeroDeltaE", base);
    py::register_exception<ZeroFirstMoment>(m, "ZeroFirstMoment", base);
    py::register_exception<DegenerateDenominator>(m, "DegenerateDenominator", base);
    py::register_exception<OutOfValidityWindow>(m, "OutOfValidityWindow", base);
    py::register_exception<NoCrossing>(m, "NoCrossing", base);
    py::register_exception<NotEigenstateStart>(m, "NotEigenstateStart", base);

    py::class_<UnitsConfig>(m, "UnitsConfig")
        .def(py::init<>())
        .def(py::init<double>(), py::arg("hbar"))
        .def_readonly("hbar", &UnitsConfig::hbar);

    py::class_<QuantumState>(m, "QuantumState")
        .def(py::init<Vector>(), py::arg("amplitudes"))
        .def_static("normalized", &QuantumState::normalized, py::arg("amplitudes"))
        .def_property_readonly("dim", &QuantumState::dim)
        .def_property_readonly("amplitudes",
                               [](const QuantumState& s) { return s.amplitudes(); });

    py::class_<Observable>(m, "Observable")
        .def(py::init<Matrix>(), py::arg("entries"))
        .def_property_readonly("dim", &Observable::dim)
        .def_property_readonly("entries", [](const Observable& o) { return o.entries(); });

    py::class_<Moments>(m, "Moments")
        .def_readonly("mean", &Moments::mean)
        .def_readonly("sd", &Moments::sd);

    py::class_<TwoLevelSplit>(m, "TwoLevelSplit")
        .def_readonly("alpha", &TwoLevelSplit::alpha)
        .def_readonly("beta", &TwoLevelSplit::beta)
        .def_property_readonly("orth_state", [](const TwoLevelSplit& s) {
            return s.orth_state ? py::cast(*s.orth_state) : py::none().cast<py::object>();
        });

    m.def("expectation", &expectation, py::arg("state"), py::arg("obs"));
    m.def("uncertainty", &uncertainty, py::arg("state"), py::arg("obs"));
    m.def("observable_moments", &observable_moments, py::arg("state"), py::arg("obs"));
    m.def("fidelity", &fidelity, py::arg("a"), py::arg("b"));
    m.def("shift_observable", &shift_observable, py::arg("obs"), py::arg("state"));
    m.def("two_level_decompose", &two_level_decompose, py::arg("psi0"), py::arg("psit"));
    m.def(
        "evolve",
        [](const Observable& h, const QuantumState& psi, double t, UnitsConfig units) {
            return evolve(spectral_decompose(h), psi, t, units);
        },
        py::arg("hamiltonian"), py::arg("state"), py::arg("t"),
        py::arg("units") = UnitsConfig{});

    py::class_<Propagator>(m, "Propagator")
        .def(py::init<const Observable&, QuantumState, UnitsConfig>(), py::arg("hamiltonian"),
             py::arg("initial"), py::arg("units") = UnitsConfig{})
        .def("at", &Propagator::at, py::arg("t"));

    // bound laws
    m.def("tau_franson", &tau_franson, py::arg("delta_e"));
    m.def("tau_eigenstate_strict", &tau_eigenstate_strict, py::arg("delta_e"));
    m.def("tau_relaxed", &tau_relaxed, py::arg("delta_e"), py::arg("n"));
    m.def("tau_relaxed_limit", &tau_relaxed_limit, py::arg("delta_e"));
    m.def("orthogonality_time_floor", &orthogonality_time_floor, py::arg("delta_e"));
    m.def("fidelity_floor", &fidelity_floor, py::arg("delta_e"), py::arg("t"));
    m.def("beta_ceiling", &beta_ceiling, py::arg("delta_e"), py::arg("t"));
    m.def("tan_ratio_ceiling", &tan_ratio_ceiling, py::arg("delta_e"), py::arg("t"));

    py::class_<TauCatalog>(m, "TauCatalog")
        .def_static("for_delta_e", &TauCatalog::for_delta_e, py::arg("delta_e"))
        .def_readonly("delta_e", &TauCatalog::delta_e)
        .def_readonly("tau1", &TauCatalog::tau1)
        .def_readonly("tau2", &TauCatalog::tau2)
        .def_readonly("tau3", &TauCatalog::tau3)
        .def_readonly("tau5", &TauCatalog::tau5)
        .def_readonly("t_orth", &TauCatalog::t_orth)
        .def("tau4", &TauCatalog::tau4, py::arg("n"));

    py::class_<EqualityBeta>(m, "EqualityBeta")
        .def_readonly("beta", &EqualityBeta::beta)
        .def_readonly("beta_sq", &EqualityBeta::beta_sq)
        .def_readonly("reachable", &EqualityBeta::reachable);
    m.def("equality_beta", &equality_beta, py::arg("q_shifted"), py::arg("orth_state"));
    m.def("ratio_from_components", &ratio_from_components, py::arg("beta"),
          py::arg("q_shifted"), py::arg("orth_state"));

    py::class_<RateBoundCheck>(m, "RateBoundCheck")
        .def_readonly("lhs", &RateBoundCheck::lhs)
        .def_readonly("rhs", &RateBoundCheck::rhs)
        .def_readonly("ok", &RateBoundCheck::ok)
        .def_readonly("commutator_abs", &RateBoundCheck::commutator_abs)
        .def_readonly("derivative_fd", &RateBoundCheck::derivative_fd)
        .def_readonly("fd_consistent", &RateBoundCheck::fd_consistent);
    m.def("rate_bound_check", &rate_bound_check, py::arg("hamiltonian"), py::arg("obs"),
          py::arg("state"));

    py::class_<BoundPoint>(m, "BoundPoint")
        .def_readonly("t", &BoundPoint::t)
        .def_readonly("q_mean", &BoundPoint::q_mean)
        .def_readonly("delta_q", &BoundPoint::delta_q)
        .def_readonly("dq", &BoundPoint::dq)
        .def_readonly("fid", &BoundPoint::fid)
        .def_readonly("beta", &BoundPoint::beta)
        .def_readonly("ratio", &BoundPoint::ratio)
        .def_readonly("ratio_defined", &BoundPoint::ratio_defined)
        .def_readonly("fid_floor", &BoundPoint::fid_floor)
        .def_readonly("beta_ceiling", &BoundPoint::beta_ceiling)
        .def_readonly("tan_ceiling", &BoundPoint::tan_ceiling)
        .def_readonly("in_window", &BoundPoint::in_window)
        .def_readonly("franson_ok", &BoundPoint::franson_ok)
        .def_readonly("fidelity_ok", &BoundPoint::fidelity_ok)
        .def_readonly("beta_ok", &BoundPoint::beta_ok)
        .def_readonly("tan_ok", &BoundPoint::tan_ok);

    py::class_<BoundReport::Violation>(m, "Violation")
        .def_readonly("inequality", &BoundReport::Violation::inequality)
        .def_readonly("t", &BoundReport::Violation::t);

    py::class_<BoundReport>(m, "BoundReport")
        .def_readonly("points", &BoundReport::points)
        .def_readonly("delta_e", &BoundReport::delta_e)
        .def_readonly("window_end", &BoundReport::window_end)
        .def_readonly("franson_end", &BoundReport::franson_end)
        .def_readonly("eigenstate_start", &BoundReport::eigenstate_start)
        .def_readonly("window_respected", &BoundReport::window_respected)
        .def("violations", &BoundReport::violations)
        .def("all_ok", &BoundReport::all_ok)
        .def("to_csv", [](const BoundReport& r) { return write_report_csv(r); })
        .def("to_json", [](const BoundReport& r) { return write_report_json(r); });

    m.def(
        "evaluate_trajectory",
        [](const Observable& h, const QuantumState& psi0, const Observable& q,
           const std::vector<double>& grid, UnitsConfig units) {
            return evaluate_trajectory(h, psi0, q, grid, units);
        },
        py::arg("hamiltonian"), py::arg("state"), py::arg("obs"), py::arg("grid"),
        py::arg("units") = UnitsConfig{});

    // model zoo
    py::class_<ModelInstance>(m, "ModelInstance")
        .def_readonly("hamiltonian", &ModelInstance::hamiltonian)
        .def_readonly("observable_q", &ModelInstance::observable_q)
        .def_readonly("initial_state", &ModelInstance::initial_state)
        .def_readonly("delta_e", &ModelInstance::delta_e)
        .def_readonly("label", &ModelInstance::label)
        .def_static("build", &ModelInstance::build, py::arg("hamiltonian"),
                    py::arg("observable_q"), py::arg("initial_state"), py::arg("label"));

    m.def("spin_half_model", &spin_half_model, py::arg("delta_e") = 1.0);

    py::class_<RelaxedPair>(m, "RelaxedPair")
        .def_readonly("psi_in", &RelaxedPair::psi_in)
        .def_readonly("psi_f", &RelaxedPair::psi_f)
        .def_readonly("transit_time", &RelaxedPair::transit_time);
    m.def("relaxed_pair", &relaxed_pair, py::arg("delta_e") = 1.0);

    m.def("collective_spin_model", &collective_spin_model, py::arg("n"),
          py::arg("delta_e_total") = 1.0);
    m.def("collective_product_state", &collective_product_state, py::arg("n"), py::arg("phi"));

    py::class_<GaussianPacketParams>(m, "GaussianPacketParams")
        .def(py::init([](double mass, double p0, double dp, double x0, UnitsConfig units) {
                 return GaussianPacketParams{mass, p0, dp, x0, units};
             }),
             py::arg("mass"), py::arg("p0"), py::arg("dp"), py::arg("x0") = 0.0,
             py::arg("units") = UnitsConfig{})
        .def_readonly("mass", &GaussianPacketParams::mass)
        .def_readonly("p0", &GaussianPacketParams::p0)
        .def_readonly("dp", &GaussianPacketParams::dp)
        .def_readonly("x0", &GaussianPacketParams::x0);

    py::class_<GaussianPacketReport>(m, "GaussianPacketReport")
        .def_readonly("x_mean", &GaussianPacketReport::x_mean)
        .def_readonly("dx", &GaussianPacketReport::dx)
        .def_readonly("de_exact", &GaussianPacketReport::de_exact)
        .def_readonly("de_approx", &GaussianPacketReport::de_approx)
        .def_readonly("crossing_time_exact", &GaussianPacketReport::crossing_time_exact)
        .def_readonly("crossing_time_bound", &GaussianPacketReport::crossing_time_bound);
    m.def("gaussian_packet_observables", &gaussian_packet_observables, py::arg("params"),
          py::arg("t"));

    // saturation search
    py::class_<SearchConfig>(m, "SearchConfig")
        .def(py::init<>())
        .def_readwrite("dim", &SearchConfig::dim)
        .def_readwrite("trials", &SearchConfig::trials)
        .def_readwrite("seed", &SearchConfig::seed)
        .def_readwrite("window", &SearchConfig::window)
        .def_readwrite("grid_points", &SearchConfig::grid_points)
        .def_readwrite("refine_tol", &SearchConfig::refine_tol);

    py::class_<TrialOutcome>(m, "TrialOutcome")
        .def_readonly("trial_index", &TrialOutcome::trial_index)
        .def_readonly("crossing", &TrialOutcome::crossing);

    py::class_<SearchReport>(m, "SearchReport")
        .def_readonly("trials", &SearchReport::trials)
        .def_readonly("min_crossing", &SearchReport::min_crossing)
        .def_readonly("argmin_trial", &SearchReport::argmin_trial)
        .def_readonly("argmin_instance", &SearchReport::argmin_instance)
        .def_readonly("bound_compared", &SearchReport::bound_compared)
        .def_readonly("violation", &SearchReport::violation);

    m.def("first_crossing_time", &first_crossing_time, py::arg("instance"), py::arg("window"),
          py::arg("grid_points"), py::arg("refine_tol"));
    m.def("relaxed_crossing_time", &relaxed_crossing_time, py::arg("instance"),
          py::arg("window"), py::arg("grid_points"), py::arg("refine_tol"));
    m.def("sample_instance", &sample_instance, py::arg("dim"), py::arg("seed"),
          py::arg("trial_index"));
    m.def("sample_relaxed_instance", &sample_relaxed_instance, py::arg("dim"), py::arg("seed"),
          py::arg("trial_index"));
    m.def("min_crossing_search", &min_crossing_search, py::arg("config"),
          py::arg("threads") = 1, py::call_guard<py::gil_scoped_release>());
    m.def("min_relaxed_search", &min_relaxed_search, py::arg("config"), py::arg("threads") = 1,
          py::call_guard<py::gil_scoped_release>());

    py::class_<CollectiveOptimum>(m, "CollectiveOptimum")
        .def_readonly("tilt", &CollectiveOptimum::tilt)
        .def_readonly("crossing_time", &CollectiveOptimum::crossing_time);
    m.def("optimal_collective_crossing", &optimal_collective_crossing, py::arg("n"),
          py::arg("delta_e_total") = 1.0);

    // scenario + report round-trip
    py::class_<Scenario>(m, "Scenario")
        .def_readonly("hamiltonian", &Scenario::hamiltonian)
        .def_readonly("observable", &Scenario::observable)
        .def_readonly("state", &Scenario::state)
        .def_readonly("units", &Scenario::units)
        .def_readonly("t_max", &Scenario::t_max)
        .def_readonly("steps", &Scenario::steps);
    m.def("parse_scenario_text", &parse_scenario_text, py::arg("text"));
    m.def("load_scenario", &load_scenario, py::arg("path"));
    m.def("write_scenario", &write_scenario, py::arg("scenario"));
    m.def("time_grid", &time_grid, py::arg("t_max"), py::arg("steps"));
    m.def("format_double", &format_double, py::arg("value"));
}
