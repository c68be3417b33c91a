#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "secrelay/cli.hpp"
#include "secrelay/dmc.hpp"
#include "secrelay/experiments.hpp"

namespace py = pybind11;
using namespace secrelay;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Achievable rates and capacity bounds for secure multi-phase relaying "
            "in cognitive radio networks";

  py::register_exception<infeasible_error>(m, "InfeasibleError");
  py::register_exception<config_error>(m, "ConfigError");

  m.def("cap", &cap, py::arg("x"), "log2(1 + x) in bits");
  m.def("db_to_linear", &db_to_linear);
  m.def("linear_to_db", &linear_to_db);

  py::class_<Vec2>(m, "Vec2")
      .def(py::init<double, double>(), py::arg("x"), py::arg("y"))
      .def_readwrite("x", &Vec2::x)
      .def_readwrite("y", &Vec2::y);

  py::class_<Geometry>(m, "Geometry")
      .def(py::init([](Vec2 t1, Vec2 u1, Vec2 t2, Vec2 u2, double alpha) {
             Geometry g{t1, u1, t2, u2, alpha};
             g.validate();
             return g;
           }),
           py::arg("t1"), py::arg("u1"), py::arg("t2"), py::arg("u2"),
           py::arg("pathloss_exponent") = 3.0)
      .def_readwrite("t1", &Geometry::t1)
      .def_readwrite("u1", &Geometry::u1)
      .def_readwrite("t2", &Geometry::t2)
      .def_readwrite("u2", &Geometry::u2)
      .def_readwrite("pathloss_exponent", &Geometry::pathloss_exponent);

  py::class_<ChannelGains>(m, "ChannelGains")
      .def(py::init([](cplx c11, cplx c12, cplx c21, cplx c22, cplx ctt) {
             return ChannelGains{c11, c12, c21, c22, ctt};
           }),
           py::arg("c11"), py::arg("c12"), py::arg("c21"), py::arg("c22"), py::arg("ctt"))
      .def_readwrite("c11", &ChannelGains::c11)
      .def_readwrite("c12", &ChannelGains::c12)
      .def_readwrite("c21", &ChannelGains::c21)
      .def_readwrite("c22", &ChannelGains::c22)
      .def_readwrite("ctt", &ChannelGains::ctt)
      .def("phi21", &ChannelGains::phi21)
      .def("decodable", &ChannelGains::decodable)
      .def("normalized", &ChannelGains::normalized);

  py::class_<EquivalentChannels>(m, "EquivalentChannels")
      .def_readonly("c11_p2", &EquivalentChannels::c11_p2)
      .def_readonly("c12_p2", &EquivalentChannels::c12_p2)
      .def_readonly("c11_p3", &EquivalentChannels::c11_p3)
      .def_readonly("c12_p3", &EquivalentChannels::c12_p3);

  py::class_<StandardizedChannel>(m, "StandardizedChannel")
      .def_readonly("a", &StandardizedChannel::a)
      .def_readonly("b", &StandardizedChannel::b)
      .def_readonly("p1_tilde", &StandardizedChannel::p1_tilde)
      .def_readonly("p2_tilde", &StandardizedChannel::p2_tilde);

  m.def("gains_from_geometry", &gains_from_geometry, py::arg("geometry"),
        py::arg("normalize") = true);
  m.def("equivalent_channels", &equivalent_channels, py::arg("gains"), py::arg("params"),
        py::arg("p1"));
  m.def("standardize", &standardize, py::arg("gains"), py::arg("p1"), py::arg("p2"));

  py::class_<SchemeParams>(m, "SchemeParams")
      .def(py::init(&SchemeParams::make), py::arg("eta1"), py::arg("eta2"), py::arg("rho2") = 0.0,
           py::arg("rho3") = 0.0, py::arg("gamma") = 0.0, py::arg("p2_2") = 0.0,
           py::arg("p2_3") = 0.0)
      .def_readwrite("eta1", &SchemeParams::eta1)
      .def_readwrite("eta2", &SchemeParams::eta2)
      .def_readwrite("eta3", &SchemeParams::eta3)
      .def_readwrite("rho2", &SchemeParams::rho2)
      .def_readwrite("rho3", &SchemeParams::rho3)
      .def_readwrite("gamma", &SchemeParams::gamma)
      .def_readwrite("p2_2", &SchemeParams::p2_2)
      .def_readwrite("p2_3", &SchemeParams::p2_3)
      .def("average_power", &SchemeParams::average_power)
      .def("within_power", &SchemeParams::within_power);

  py::class_<Scenario>(m, "Scenario")
      .def(py::init([](const ChannelGains& g, double p1, double p2, py::object rs1) {
             return Scenario::make(g, p1, p2,
                                   rs1.is_none() ? std::nullopt
                                                 : std::optional<double>(rs1.cast<double>()));
           }),
           py::arg("gains"), py::arg("p1"), py::arg("p2"), py::arg("rs1_target") = py::none())
      .def_readonly("gains", &Scenario::gains)
      .def_readonly("p1", &Scenario::p1)
      .def_readonly("p2", &Scenario::p2)
      .def_readonly("rs1_target", &Scenario::rs1_target);

  py::class_<MiTerms>(m, "MiTerms")
      .def_readonly("i_v1_y1_p1", &MiTerms::i_v1_y1_p1)
      .def_readonly("i_v1_y2_p1", &MiTerms::i_v1_y2_p1)
      .def_readonly("i_v1_y1_p2", &MiTerms::i_v1_y1_p2)
      .def_readonly("i_v1_v2y2_p2", &MiTerms::i_v1_v2y2_p2)
      .def_readonly("i_v1_y2_p2_given_v2", &MiTerms::i_v1_y2_p2_given_v2)
      .def_readonly("i_v1_v2", &MiTerms::i_v1_v2)
      .def_readonly("i_v2_y2_p2", &MiTerms::i_v2_y2_p2)
      .def_readonly("i_v1_y1_p3", &MiTerms::i_v1_y1_p3)
      .def_readonly("i_v1_y2_p3", &MiTerms::i_v1_y2_p3)
      .def_readonly("mmse_alpha", &MiTerms::mmse_alpha);

  py::class_<RateReport>(m, "RateReport")
      .def_readonly("r2", &RateReport::r2)
      .def_readonly("feasible", &RateReport::feasible)
      .def_readonly("decodable", &RateReport::decodable)
      .def_readonly("residual_reliability", &RateReport::residual_reliability)
      .def_readonly("residual_secrecy", &RateReport::residual_secrecy)
      .def_readonly("terms", &RateReport::terms);

  m.def("baseline_secrecy_rate", &baseline_secrecy_rate);
  m.def("eta1_min", &eta1_min);
  m.def("dpc_rate", &dpc_rate);
  m.def("no_dpc_rate", &no_dpc_rate);
  m.def("single_phase_rate", &single_phase_rate, py::arg("scenario"), py::arg("params"),
        py::arg("use_dpc") = true);

  py::class_<SplitPhaseRates>(m, "SplitPhaseRates")
      .def_readonly("r1_split", &SplitPhaseRates::r1_split)
      .def_readonly("r1_mixed", &SplitPhaseRates::r1_mixed);
  m.def("split_phase_primary_rates", &split_phase_primary_rates, py::arg("scenario"),
        py::arg("eta3p"), py::arg("eta4"), py::arg("p2_3p"), py::arg("p2_4"), py::arg("rho3"),
        py::arg("p2_3"));
  m.def("phase_averaged_secrecy_rate", &phase_averaged_secrecy_rate);

  py::class_<OuterBoundParams>(m, "OuterBoundParams")
      .def(py::init([](double a, double b, double d, double e, double g, cplx rho) {
             OuterBoundParams bp{a, b, d, e, g, rho};
             bp.validate();
             return bp;
           }),
           py::arg("alpha"), py::arg("beta"), py::arg("delta"), py::arg("eta"), py::arg("gamma"),
           py::arg("rho") = cplx{0.0, 0.0})
      .def_readwrite("alpha", &OuterBoundParams::alpha)
      .def_readwrite("beta", &OuterBoundParams::beta)
      .def_readwrite("delta", &OuterBoundParams::delta)
      .def_readwrite("eta", &OuterBoundParams::eta)
      .def_readwrite("gamma", &OuterBoundParams::gamma)
      .def_readwrite("rho", &OuterBoundParams::rho);

  py::class_<BoundPoint>(m, "BoundPoint")
      .def_readonly("r_s1_ub", &BoundPoint::r_s1_ub)
      .def_readonly("r2_ub", &BoundPoint::r2_ub)
      .def_readonly("params", &BoundPoint::params);

  py::class_<R2OuterConfig>(m, "R2OuterConfig")
      .def(py::init<>())
      .def_readwrite("match_tol", &R2OuterConfig::match_tol)
      .def_readwrite("samples", &R2OuterConfig::samples)
      .def_readwrite("refine_top", &R2OuterConfig::refine_top)
      .def_readwrite("refine_rounds", &R2OuterConfig::refine_rounds)
      .def_readwrite("seed", &R2OuterConfig::seed)
      .def_readwrite("complex_rho", &R2OuterConfig::complex_rho)
      .def_readwrite("at_least", &R2OuterConfig::at_least)
      .def_readwrite("threads", &R2OuterConfig::threads);

  py::class_<R2OuterResult>(m, "R2OuterResult")
      .def_readonly("feasible", &R2OuterResult::feasible)
      .def_readonly("r2_ub", &R2OuterResult::r2_ub)
      .def_readonly("best", &R2OuterResult::best)
      .def_readonly("matched", &R2OuterResult::matched)
      .def_readonly("degradedness_flag", &R2OuterResult::degradedness_flag);

  m.def("awgn_outer_point", &awgn_outer_point);
  m.def("r2_outer", &r2_outer, py::arg("std_channel"), py::arg("rs1_target"),
        py::arg("config") = R2OuterConfig{});
  m.def("scale_ub", &scale_ub);

  py::enum_<SchemeType>(m, "SchemeType")
      .value("DPC_3PHASE", SchemeType::dpc_3phase)
      .value("NODPC_3PHASE", SchemeType::nodpc_3phase)
      .value("DPC_SINGLE", SchemeType::dpc_single)
      .value("NODPC_SINGLE", SchemeType::nodpc_single);

  py::class_<OptBudget>(m, "OptBudget")
      .def(py::init<>())
      .def_readwrite("starts", &OptBudget::starts)
      .def_readwrite("evals_per_start", &OptBudget::evals_per_start)
      .def_readwrite("step_tol", &OptBudget::step_tol);

  py::class_<OptProblem>(m, "OptProblem")
      .def(py::init<>())
      .def_readwrite("scenario", &OptProblem::scenario)
      .def_readwrite("scheme", &OptProblem::scheme)
      .def_readwrite("budget", &OptProblem::budget)
      .def_readwrite("seed", &OptProblem::seed)
      .def_readwrite("threads", &OptProblem::threads)
      .def_readwrite("warm_starts", &OptProblem::warm_starts);

  py::enum_<OptStatus>(m, "OptStatus")
      .value("FEASIBLE_OPT", OptStatus::feasible_opt)
      .value("NO_FEASIBLE_POINT", OptStatus::no_feasible_point);

  py::class_<OptResult>(m, "OptResult")
      .def_readonly("status", &OptResult::status)
      .def_readonly("best", &OptResult::best)
      .def_readonly("report", &OptResult::report)
      .def_readonly("message", &OptResult::message);

  m.def("solve", &solve, py::call_guard<py::gil_scoped_release>());
  m.def(
      "resolve_gamma",
      [](const Scenario& sc, SchemeType scheme, const SchemeParams& partial) -> py::object {
        auto g = resolve_gamma(sc, scheme, partial);
        return g ? py::cast(*g) : py::none();
      },
      py::arg("scenario"), py::arg("scheme"), py::arg("partial"));
  m.def("compare_relay_jam_split", &compare_relay_jam_split, py::arg("scenario"), py::arg("eta2"),
        py::arg("p2_3"), py::arg("grid") = 201, py::call_guard<py::gil_scoped_release>());

  py::class_<JointPmf>(m, "JointPmf")
      .def(py::init<std::vector<std::string>, std::vector<int>, std::vector<double>>(),
           py::arg("names"), py::arg("cards"), py::arg("probs"))
      .def_static("load_csv", &JointPmf::load_csv)
      .def("save_csv", &JointPmf::save_csv)
      .def_property_readonly("names", &JointPmf::names)
      .def_property_readonly("cards", &JointPmf::cards)
      .def("marginal", &JointPmf::marginal)
      .def("entropy", &JointPmf::entropy)
      .def("entropy_all", &JointPmf::entropy_all);

  py::class_<CondPmf>(m, "CondPmf")
      .def(py::init<std::vector<std::string>, std::vector<int>, std::vector<std::string>,
                    std::vector<int>, std::vector<double>>(),
           py::arg("given_names"), py::arg("given_cards"), py::arg("target_names"),
           py::arg("target_cards"), py::arg("table"))
      .def_static("load_csv", &CondPmf::load_csv, py::arg("path"), py::arg("n_given"));

  m.def("compose", &compose);
  m.def("mutual_information", &mutual_information);
  m.def("conditional_mutual_information", &conditional_mutual_information);

  py::class_<DmcScheme>(m, "DmcScheme")
      .def(py::init<>())
      .def_readwrite("pmf_v1", &DmcScheme::pmf_v1)
      .def_readwrite("v2_given_v1", &DmcScheme::v2_given_v1)
      .def_readwrite("x2_given_v1v2", &DmcScheme::x2_given_v1v2)
      .def_readwrite("x1_given_v1", &DmcScheme::x1_given_v1)
      .def_readwrite("channel_with_t2", &DmcScheme::channel_with_t2)
      .def_readwrite("channel_without_t2", &DmcScheme::channel_without_t2)
      .def_readwrite("eta", &DmcScheme::eta);

  py::class_<DmcRateReport>(m, "DmcRateReport")
      .def_readonly("r2", &DmcRateReport::r2)
      .def_readonly("r_s1", &DmcRateReport::r_s1)
      .def_readonly("r_s1_prime", &DmcRateReport::r_s1_prime)
      .def_readonly("reliability_slack", &DmcRateReport::reliability_slack)
      .def_readonly("secrecy_residual", &DmcRateReport::secrecy_residual)
      .def("feasible", &DmcRateReport::feasible, py::arg("secrecy_tol") = 1e-6,
           py::arg("reliability_tol") = 1e-6);

  m.def("dmc_single_phase_rate", &dmc_single_phase_rate);
  m.def("dmc_three_phase_rate", &dmc_three_phase_rate);

  py::class_<DmcOuterBound>(m, "DmcOuterBound")
      .def_readonly("r_s1_ub", &DmcOuterBound::r_s1_ub)
      .def_readonly("r2_ub", &DmcOuterBound::r2_ub);
  m.def("dmc_outer_bound", &dmc_outer_bound);

  m.def("bound_gap_gains", &bound_gap_gains);
  m.def("bound_gap_scenario", &bound_gap_scenario, py::arg("p2"), py::arg("p1") = 10.0);
}
