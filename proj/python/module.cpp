#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "stefan_front/classifier.hpp"
#include "stefan_front/phase_plane.hpp"
#include "stefan_front/semiwave.hpp"
#include "stefan_front/solver.hpp"

namespace py = pybind11;
using namespace stefan_front;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Free-boundary reaction-diffusion toolkit";

    auto base = py::register_exception<Error>(m, "Error");
    py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<QuadError>(m, "QuadError", base.ptr());
    py::register_exception<KindError>(m, "KindError", base.ptr());
    py::register_exception<NoSolution>(m, "NoSolution", base.ptr());
    py::register_exception<NoTermination>(m, "NoTermination", base.ptr());
    py::register_exception<DegenerateError>(m, "DegenerateError", base.ptr());
    py::register_exception<SignError>(m, "SignError", base.ptr());
    py::register_exception<BlowupError>(m, "BlowupError", base.ptr());
    py::register_exception<MonotoneViolation>(m, "MonotoneViolation", base.ptr());
    py::register_exception<BudgetExhausted>(m, "BudgetExhausted", base.ptr());
    py::register_exception<NotSpreading>(m, "NotSpreading", base.ptr());

    py::enum_<Kind>(m, "Kind")
        .value("Monostable", Kind::Monostable)
        .value("Bistable", Kind::Bistable)
        .value("Combustion", Kind::Combustion)
        .value("Custom", Kind::Custom);

    py::class_<Nonlinearity>(m, "Nonlinearity")
        .def("__call__", &Nonlinearity::operator())
        .def("derivative", &Nonlinearity::derivative)
        .def_property_readonly("kind", &Nonlinearity::kind)
        .def_property_readonly("theta", &Nonlinearity::theta)
        .def_property_readonly("fp0", &Nonlinearity::fp0)
        .def_property_readonly("fp1", &Nonlinearity::fp1)
        .def_property_readonly("sup_slope", &Nonlinearity::sup_slope)
        .def_property_readonly("omega0", &Nonlinearity::omega0)
        .def_property_readonly("theta_bar", &Nonlinearity::theta_bar)
        .def_property_readonly("label", &Nonlinearity::label)
        .def("__repr__", [](const Nonlinearity& nl) { return "<Nonlinearity " + nl.label() + ">"; });

    m.def("logistic", [] { return logistic(); });
    m.def("cubic_bistable", [](double theta) { return cubic_bistable(theta); }, py::arg("theta"));
    m.def("combustion", [](double theta) { return combustion(theta); }, py::arg("theta"));
    m.def("custom_polynomial", [](std::vector<double> c) { return custom_polynomial(std::move(c)); },
          py::arg("coefficients"));

    // phase plane
    py::class_<ProfilePoint>(m, "ProfilePoint")
        .def_readonly("x", &ProfilePoint::x)
        .def_readonly("value", &ProfilePoint::value);
    py::class_<CriticalLength>(m, "CriticalLength")
        .def_readonly("value", &CriticalLength::value)
        .def_readonly("z_m", &CriticalLength::z_m)
        .def_readonly("argmin_q", &CriticalLength::argmin_q)
        .def_readonly("multiple_minima", &CriticalLength::multiple_minima);
    py::class_<StationaryProfile>(m, "StationaryProfile")
        .def_readonly("Z", &StationaryProfile::Z)
        .def_readonly("q_top", &StationaryProfile::q_top)
        .def_readonly("boundary_slope", &StationaryProfile::boundary_slope)
        .def_readonly("profile", &StationaryProfile::profile)
        .def("value_at", &StationaryProfile::value_at);
    m.def("time_map", &time_map, py::arg("nl"), py::arg("q"));
    m.def("critical_length", &critical_length, py::arg("nl"));
    m.def("stationary_profile", &stationary_profile, py::arg("nl"), py::arg("Z"));

    // semi-waves
    py::class_<SemiWaveResult>(m, "SemiWaveResult")
        .def_readonly("c0", &SemiWaveResult::c0)
        .def_readonly("c_star", &SemiWaveResult::c_star)
        .def_readonly("mu", &SemiWaveResult::mu)
        .def_readonly("omega_star", &SemiWaveResult::omega_star)
        .def_readonly("profile", &SemiWaveResult::profile);
    m.def("c0", [](const Nonlinearity& nl) { return c0(nl); }, py::arg("nl"));
    m.def("c_star", [](const Nonlinearity& nl, double mu) { return c_star(nl, mu); }, py::arg("nl"), py::arg("mu"));
    m.def("ground_state", [](const Nonlinearity& nl) { return ground_state(nl); }, py::arg("nl"));

    // solver
    py::enum_<InitialFamily>(m, "InitialFamily")
        .value("CosineBump", InitialFamily::CosineBump)
        .value("QuadBump", InitialFamily::QuadBump)
        .value("Samples", InitialFamily::Samples);
    py::class_<InitialData>(m, "InitialData")
        .def(py::init<>())
        .def_readwrite("family", &InitialData::family)
        .def_readwrite("sigma", &InitialData::sigma)
        .def_readwrite("skew", &InitialData::skew)
        .def_readwrite("samples", &InitialData::samples);
    py::class_<Tolerances>(m, "Tolerances")
        .def(py::init<>())
        .def_readwrite("overshoot_tol", &Tolerances::overshoot_tol)
        .def_readwrite("check_tol", &Tolerances::check_tol)
        .def_readwrite("sign_tol", &Tolerances::sign_tol)
        .def_readwrite("blowup_factor", &Tolerances::blowup_factor)
        .def_readwrite("vanish_tol", &Tolerances::vanish_tol);
    py::class_<SolverConfig>(m, "SolverConfig")
        .def(py::init<>())
        .def_readwrite("nl", &SolverConfig::nl)
        .def_readwrite("mu", &SolverConfig::mu)
        .def_readwrite("h0", &SolverConfig::h0)
        .def_readwrite("u0", &SolverConfig::u0)
        .def_readwrite("N", &SolverConfig::N)
        .def_readwrite("dt_safety", &SolverConfig::dt_safety)
        .def_readwrite("t_max", &SolverConfig::t_max)
        .def_readwrite("snapshot_every", &SolverConfig::snapshot_every)
        .def_readwrite("tol", &SolverConfig::tol)
        .def_readwrite("stop_on_vanish", &SolverConfig::stop_on_vanish)
        .def_readwrite("front_stride", &SolverConfig::front_stride);
    py::enum_<Termination>(m, "Termination")
        .value("TMax", Termination::TMax)
        .value("VanishTol", Termination::VanishTol)
        .value("SpreadCertified", Termination::SpreadCertified)
        .value("VanishCertified", Termination::VanishCertified)
        .value("Blowup", Termination::Blowup);
    py::class_<Snapshot>(m, "Snapshot")
        .def_readonly("t", &Snapshot::t)
        .def_readonly("g", &Snapshot::g)
        .def_readonly("h", &Snapshot::h)
        .def_readonly("U", &Snapshot::U)
        .def("x_at", &Snapshot::x_at)
        .def("max_u", &Snapshot::max_u)
        .def("mass", &Snapshot::mass)
        .def("value_at", &Snapshot::value_at);
    py::class_<FrontRecord>(m, "FrontRecord")
        .def_readonly("t", &FrontRecord::t)
        .def_readonly("g", &FrontRecord::g)
        .def_readonly("h", &FrontRecord::h)
        .def_readonly("gprime", &FrontRecord::gp)
        .def_readonly("hprime", &FrontRecord::hp);
    py::class_<CheckStat>(m, "CheckStat")
        .def_readonly("evaluations", &CheckStat::evaluations)
        .def_readonly("violations", &CheckStat::violations)
        .def_readonly("worst", &CheckStat::worst);
    py::class_<Run>(m, "Run")
        .def_readonly("config_hash", &Run::config_hash)
        .def_readonly("snapshots", &Run::snapshots)
        .def_readonly("fronts", &Run::fronts)
        .def_readonly("termination", &Run::termination)
        .def_readonly("checks", &Run::checks)
        .def_readonly("warnings", &Run::warnings)
        .def_readonly("steps", &Run::steps);
    m.def("run", [](const SolverConfig& c) { return run(c); }, py::arg("config"),
          py::call_guard<py::gil_scoped_release>());

    // classifier
    py::enum_<Outcome>(m, "Outcome")
        .value("Spreading", Outcome::Spreading)
        .value("Vanishing", Outcome::Vanishing)
        .value("TransitionBistable", Outcome::TransitionBistable)
        .value("TransitionCombustion", Outcome::TransitionCombustion)
        .value("Undecided", Outcome::Undecided);
    py::enum_<Certificate>(m, "Certificate")
        .value("ThetaCap", Certificate::ThetaCap)
        .value("MassCap", Certificate::MassCap)
        .value("SmallAmpMono", Certificate::SmallAmpMono)
        .value("WidthMono", Certificate::WidthMono)
        .value("DominatesVZ", Certificate::DominatesVZ)
        .value("Heuristic", Certificate::Heuristic);
    py::class_<Verdict>(m, "Verdict")
        .def_readonly("outcome", &Verdict::outcome)
        .def_readonly("certificate", &Verdict::certificate)
        .def_readonly("t", &Verdict::t)
        .def_readonly("evidence", &Verdict::evidence);
    py::class_<ClassifierOptions>(m, "ClassifierOptions")
        .def(py::init<>())
        .def_readwrite("spread_tol", &ClassifierOptions::spread_tol)
        .def_readwrite("vanish_tol", &ClassifierOptions::vanish_tol)
        .def_readwrite("trans_tol", &ClassifierOptions::trans_tol)
        .def_readwrite("cert_z_margin", &ClassifierOptions::cert_z_margin);
    py::class_<ThresholdOptions>(m, "ThresholdOptions")
        .def(py::init<>())
        .def_readwrite("tol", &ThresholdOptions::tol)
        .def_readwrite("rel_tol", &ThresholdOptions::rel_tol)
        .def_readwrite("budget", &ThresholdOptions::budget)
        .def_readwrite("extensions", &ThresholdOptions::extensions);
    py::class_<ThresholdEval>(m, "ThresholdEval")
        .def_readonly("sigma", &ThresholdEval::sigma)
        .def_readonly("verdict", &ThresholdEval::verdict);
    py::class_<ThresholdResult>(m, "ThresholdResult")
        .def_readonly("sigma_lo", &ThresholdResult::sigma_lo)
        .def_readonly("sigma_hi", &ThresholdResult::sigma_hi)
        .def_readonly("width", &ThresholdResult::width)
        .def_readonly("sigma_lo_certified", &ThresholdResult::sigma_lo_certified)
        .def_readonly("evals", &ThresholdResult::evals)
        .def_readonly("budget_hit", &ThresholdResult::budget_hit)
        .def_readonly("unresolved", &ThresholdResult::unresolved)
        .def_readonly("note", &ThresholdResult::note)
        .def("midpoint", &ThresholdResult::midpoint);
    py::class_<SpeedEstimate>(m, "SpeedEstimate")
        .def_readonly("c_hat", &SpeedEstimate::c_hat)
        .def_readonly("slope_h", &SpeedEstimate::slope_h)
        .def_readonly("slope_g", &SpeedEstimate::slope_g)
        .def_readonly("asymmetry", &SpeedEstimate::asymmetry)
        .def_readonly("decay_slope", &SpeedEstimate::decay_slope)
        .def_readonly("decay_residual", &SpeedEstimate::decay_residual);

    m.def("certify",
          [](const Snapshot& s, const Nonlinearity& nl, double mu, const ClassifierOptions& o) {
              return certify(s, nl, mu, o);
          },
          py::arg("snapshot"), py::arg("nl"), py::arg("mu"), py::arg("options") = ClassifierOptions{});
    m.def("classify_run",
          [](const Run& r, const Nonlinearity& nl, double mu, const ClassifierOptions& o) {
              return classify_run(r, nl, mu, o);
          },
          py::arg("run"), py::arg("nl"), py::arg("mu"), py::arg("options") = ClassifierOptions{});
    m.def("sigma_star", &sigma_star, py::arg("config"), py::arg("threshold") = ThresholdOptions{},
          py::arg("options") = ClassifierOptions{}, py::call_guard<py::gil_scoped_release>());
    m.def("speed_estimate", &speed_estimate, py::arg("run"), py::arg("verdict"));
}
