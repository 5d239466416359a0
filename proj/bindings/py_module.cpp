#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "rotecon/accounting.hpp"
#include "rotecon/growth.hpp"
#include "rotecon/optimizer.hpp"
#include "rotecon/prices.hpp"
#include "rotecon/runner.hpp"
#include "rotecon/scenario.hpp"

namespace py = pybind11;
using namespace rotecon;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Rotation economics of even-aged stands";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<InfeasibleThinningError>(m, "InfeasibleThinningError",
                                                  PyExc_ValueError);
  py::register_exception<SingularParameterError>(m, "SingularParameterError",
                                                 PyExc_ValueError);
  py::register_exception<NoBreakEvenError>(m, "NoBreakEvenError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);

  py::class_<YieldParams>(m, "YieldParams")
      .def(py::init<>())
      .def(py::init([](double asymptote, double rate, double shape, std::string label) {
             YieldParams p{asymptote, rate, shape, std::move(label)};
             return p;
           }),
           py::arg("asymptote"), py::arg("rate"), py::arg("shape"), py::arg("label") = "")
      .def_readwrite("asymptote", &YieldParams::asymptote)
      .def_readwrite("rate", &YieldParams::rate)
      .def_readwrite("shape", &YieldParams::shape)
      .def_readwrite("label", &YieldParams::label)
      .def("validate", &YieldParams::validate);

  py::enum_<ThinningModel>(m, "ThinningModel")
      .value("Constant", ThinningModel::Constant)
      .value("Decaying", ThinningModel::Decaying);

  py::class_<ThinningResponse>(m, "ThinningResponse")
      .def(py::init<>())
      .def(py::init([](ThinningModel model, double boost, double decay_rate) {
             ThinningResponse r{model, boost, decay_rate};
             return r;
           }),
           py::arg("model") = ThinningModel::Constant, py::arg("boost") = 0.0,
           py::arg("decay_rate") = 0.0)
      .def_readwrite("model", &ThinningResponse::model)
      .def_readwrite("boost", &ThinningResponse::boost)
      .def_readwrite("decay_rate", &ThinningResponse::decay_rate)
      .def("validate", &ThinningResponse::validate);

  py::class_<ThinningEvent>(m, "ThinningEvent")
      .def(py::init<>())
      .def(py::init([](double age, double removed) {
             ThinningEvent e{age, removed};
             return e;
           }),
           py::arg("age"), py::arg("removed"))
      .def_readwrite("age", &ThinningEvent::age)
      .def_readwrite("removed", &ThinningEvent::removed);

  py::class_<ManagementPlan>(m, "ManagementPlan")
      .def(py::init<>())
      .def(py::init([](double rotation, std::vector<ThinningEvent> thinnings,
                       ThinningResponse response) {
             ManagementPlan p{rotation, std::move(thinnings), response};
             return p;
           }),
           py::arg("rotation"), py::arg("thinnings") = std::vector<ThinningEvent>{},
           py::arg("response") = ThinningResponse{})
      .def_readwrite("rotation", &ManagementPlan::rotation)
      .def_readwrite("thinnings", &ManagementPlan::thinnings)
      .def_readwrite("response", &ManagementPlan::response)
      .def("validate", &ManagementPlan::validate);

  py::class_<ResolvedThinning>(m, "ResolvedThinning")
      .def_readonly("age", &ResolvedThinning::age)
      .def_readonly("removed", &ResolvedThinning::removed)
      .def_readonly("standing_before", &ResolvedThinning::standing_before)
      .def_readonly("intensity", &ResolvedThinning::intensity);

  py::class_<TrajectorySample>(m, "TrajectorySample")
      .def_readonly("age", &TrajectorySample::age)
      .def_readonly("volume", &TrajectorySample::volume);

  py::class_<VolumeTrajectory>(m, "VolumeTrajectory")
      .def_readonly("rotation", &VolumeTrajectory::rotation)
      .def_readonly("thinnings", &VolumeTrajectory::thinnings)
      .def_readonly("samples", &VolumeTrajectory::samples)
      .def("volume_at", &VolumeTrajectory::volume_at, py::arg("age"))
      .def("volume_before", &VolumeTrajectory::volume_before, py::arg("age"))
      .def("growth_rate_at", &VolumeTrajectory::growth_rate_at, py::arg("age"));

  py::class_<EconParams>(m, "EconParams")
      .def(py::init<>())
      .def(py::init([](double stumpage_price, double establishment_cost,
                       double bare_land_value, double annual_overhead) {
             EconParams e{stumpage_price, establishment_cost, bare_land_value,
                          annual_overhead};
             return e;
           }),
           py::arg("stumpage_price"), py::arg("establishment_cost"),
           py::arg("bare_land_value"), py::arg("annual_overhead") = 0.0)
      .def_readwrite("stumpage_price", &EconParams::stumpage_price)
      .def_readwrite("establishment_cost", &EconParams::establishment_cost)
      .def_readwrite("bare_land_value", &EconParams::bare_land_value)
      .def_readwrite("annual_overhead", &EconParams::annual_overhead)
      .def("validate", &EconParams::validate);

  py::class_<LedgerImpulse>(m, "LedgerImpulse")
      .def_readonly("age", &LedgerImpulse::age)
      .def_readonly("amount", &LedgerImpulse::amount);

  py::class_<LedgerSample>(m, "LedgerSample")
      .def_readonly("age", &LedgerSample::age)
      .def_readonly("capitalization", &LedgerSample::capitalization)
      .def_readonly("profit_density", &LedgerSample::profit_density);

  py::class_<AccrualLedger>(m, "AccrualLedger")
      .def_readonly("samples", &AccrualLedger::samples)
      .def_readonly("impulses", &AccrualLedger::impulses)
      .def_readonly("integrated_profit", &AccrualLedger::integrated_profit)
      .def_readonly("impulse_total", &AccrualLedger::impulse_total);

  py::class_<RotationReport>(m, "RotationReport")
      .def_readonly("rotation", &RotationReport::rotation)
      .def_readonly("expected_profit_rate", &RotationReport::expected_profit_rate)
      .def_readonly("expected_capitalization", &RotationReport::expected_capitalization)
      .def_readonly("expected_return_rate", &RotationReport::expected_return_rate)
      .def_readonly("terminal_volume", &RotationReport::terminal_volume)
      .def_readonly("thinned_volume", &RotationReport::thinned_volume);

  py::class_<PriceProcess>(m, "PriceProcess")
      .def(py::init<>())
      .def(py::init([](double initial_level, double coefficient, double time_scale,
                       double origin) {
             PriceProcess p{initial_level, coefficient, time_scale, origin};
             return p;
           }),
           py::arg("initial_level"), py::arg("coefficient"), py::arg("time_scale") = 1.0,
           py::arg("origin") = 0.0)
      .def_readwrite("initial_level", &PriceProcess::initial_level)
      .def_readwrite("coefficient", &PriceProcess::coefficient)
      .def_readwrite("time_scale", &PriceProcess::time_scale)
      .def_readwrite("origin", &PriceProcess::origin)
      .def("validate", &PriceProcess::validate);

  py::class_<InvarianceRow>(m, "InvarianceRow")
      .def_readonly("offset", &InvarianceRow::offset)
      .def_readonly("window_start", &InvarianceRow::window_start)
      .def_readonly("price_multiplier", &InvarianceRow::price_multiplier)
      .def_readonly("scaled_profit_rate", &InvarianceRow::scaled_profit_rate)
      .def_readonly("scaled_capitalization", &InvarianceRow::scaled_capitalization)
      .def_readonly("return_rate", &InvarianceRow::return_rate)
      .def_readonly("optimal_rotation", &InvarianceRow::optimal_rotation);

  py::class_<InvarianceReport>(m, "InvarianceReport")
      .def_readonly("stationary_profit_rate", &InvarianceReport::stationary_profit_rate)
      .def_readonly("stationary_capitalization",
                    &InvarianceReport::stationary_capitalization)
      .def_readonly("rows", &InvarianceReport::rows)
      .def_readonly("max_return_rate_spread", &InvarianceReport::max_return_rate_spread)
      .def_readonly("max_rotation_spread", &InvarianceReport::max_rotation_spread)
      .def_readonly("invariant", &InvarianceReport::invariant);

  py::enum_<Objective>(m, "Objective")
      .value("ReturnRate", Objective::ReturnRate)
      .value("ProfitRate", Objective::ProfitRate);

  py::class_<RotationSearchOptions>(m, "RotationSearchOptions")
      .def(py::init<>())
      .def_readwrite("tau_max", &RotationSearchOptions::tau_max)
      .def_readwrite("coarse_step", &RotationSearchOptions::coarse_step)
      .def_readwrite("refine_tolerance", &RotationSearchOptions::refine_tolerance)
      .def_readwrite("tie_tolerance", &RotationSearchOptions::tie_tolerance)
      .def_readwrite("sample_step", &RotationSearchOptions::sample_step);

  py::class_<OptimizationResult>(m, "OptimizationResult")
      .def_readonly("objective", &OptimizationResult::objective)
      .def_readonly("rotation", &OptimizationResult::rotation)
      .def_readonly("objective_value", &OptimizationResult::objective_value)
      .def_readonly("report", &OptimizationResult::report);

  py::class_<ThinningSearchOptions>(m, "ThinningSearchOptions")
      .def(py::init<>())
      .def_readwrite("tau_max", &ThinningSearchOptions::tau_max)
      .def_readwrite("intensities", &ThinningSearchOptions::intensities)
      .def_readwrite("refine_top", &ThinningSearchOptions::refine_top)
      .def_readwrite("refine_tolerance", &ThinningSearchOptions::refine_tolerance)
      .def_readwrite("tie_tolerance", &ThinningSearchOptions::tie_tolerance)
      .def_readwrite("sample_step", &ThinningSearchOptions::sample_step);

  py::class_<ThinningSearchResult>(m, "ThinningSearchResult")
      .def_readonly("best_plan", &ThinningSearchResult::best_plan)
      .def_readonly("best_report", &ThinningSearchResult::best_report)
      .def_readonly("best_objective", &ThinningSearchResult::best_objective)
      .def_readonly("no_thinning", &ThinningSearchResult::no_thinning)
      .def_readonly("thinning_beneficial", &ThinningSearchResult::thinning_beneficial)
      .def_readonly("plans_evaluated", &ThinningSearchResult::plans_evaluated);

  py::class_<StylizedParams>(m, "StylizedParams")
      .def(py::init<>())
      .def(py::init([](double net_price, double growth_rate, double expenses) {
             StylizedParams s{net_price, growth_rate, expenses};
             return s;
           }),
           py::arg("net_price"), py::arg("growth_rate"), py::arg("expenses"))
      .def_readwrite("net_price", &StylizedParams::net_price)
      .def_readwrite("growth_rate", &StylizedParams::growth_rate)
      .def_readwrite("expenses", &StylizedParams::expenses)
      .def("validate", &StylizedParams::validate);

  py::class_<SweepCell>(m, "SweepCell")
      .def_readonly("price_multiplier", &SweepCell::price_multiplier)
      .def_readonly("expense_multiplier", &SweepCell::expense_multiplier)
      .def_readonly("optimal_rotation", &SweepCell::optimal_rotation)
      .def_readonly("objective_value", &SweepCell::objective_value);

  py::class_<Scenario>(m, "Scenario")
      .def_readonly("name", &Scenario::name)
      .def_readonly("yield_params", &Scenario::yield)
      .def_readonly("econ", &Scenario::econ)
      .def_readonly("plan", &Scenario::plan)
      .def_readonly("prices", &Scenario::prices)
      .def("validate", &Scenario::validate);

  m.def("volume", &volume, py::arg("params"), py::arg("age"));
  m.def("volume_derivative", &volume_derivative, py::arg("params"), py::arg("age"));
  m.def("apply_thinning_constant", &apply_thinning_constant, py::arg("pre_volume_next"),
        py::arg("pre_volume_now"), py::arg("removed"), py::arg("boost"));
  m.def("apply_thinning_decaying", &apply_thinning_decaying, py::arg("pre_volume_next"),
        py::arg("pre_volume_at_thinning"), py::arg("removed"), py::arg("decay_rate"),
        py::arg("elapsed"));
  m.def("build_trajectory", &build_trajectory, py::arg("params"), py::arg("plan"),
        py::arg("step") = 0.1);
  m.def("capitalization", &capitalization, py::arg("trajectory"), py::arg("econ"),
        py::arg("age"));
  m.def("operating_profit_rate", &operating_profit_rate, py::arg("trajectory"),
        py::arg("econ"), py::arg("age"));
  m.def("build_ledger", &build_ledger, py::arg("trajectory"), py::arg("econ"));
  m.def("expected_rates", &expected_rates, py::arg("trajectory"), py::arg("econ"));
  m.def("break_even_rotation", &break_even_rotation, py::arg("params"), py::arg("econ"));
  m.def("ar1_step", &ar1_step, py::arg("process"), py::arg("previous"));
  m.def("price_level", &price_level, py::arg("process"), py::arg("t"));
  m.def("expected_price", &expected_price, py::arg("process"), py::arg("b"),
        py::arg("tau"));
  m.def("window_prefactor", &window_prefactor, py::arg("process"), py::arg("b"),
        py::arg("b_star"), py::arg("tau"));
  m.def("verify_return_rate_invariance", &verify_return_rate_invariance,
        py::arg("params"), py::arg("econ"), py::arg("plan"), py::arg("process"),
        py::arg("b"), py::arg("offsets"), py::arg("tolerance") = 1e-9);
  m.def("optimize_rotation", &optimize_rotation, py::arg("params"), py::arg("econ"),
        py::arg("objective"), py::arg("options") = RotationSearchOptions{});
  m.def("optimize_thinnings", &optimize_thinnings, py::arg("params"), py::arg("econ"),
        py::arg("response"), py::arg("max_events") = 2,
        py::arg("objective") = Objective::ReturnRate,
        py::arg("options") = ThinningSearchOptions{});
  m.def("stylized_return", &stylized_return, py::arg("params"), py::arg("tau"));
  m.def("stylized_optimal_rotation", &stylized_optimal_rotation, py::arg("params"));
  m.def("sensitivity_sweep", &sensitivity_sweep, py::arg("params"), py::arg("econ"),
        py::arg("objective"), py::arg("price_multipliers"),
        py::arg("expense_multipliers"), py::arg("options") = RotationSearchOptions{});
  m.def("parse_scenario", &parse_scenario, py::arg("text"));
  m.def("load_scenario", &load_scenario, py::arg("path"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"),
      "Runs one CLI invocation; returns (exit_code, stdout, stderr).");
}
