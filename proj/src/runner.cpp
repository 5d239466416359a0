#include "rotecon/runner.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rotecon/accounting.hpp"
#include "rotecon/growth.hpp"
#include "rotecon/optimizer.hpp"
#include "rotecon/prices.hpp"
#include "rotecon/scenario.hpp"

namespace rotecon {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

// All emitted numbers are rounded to 12 significant digits, in CSV cells and
// JSON values alike.
std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double round12(double v) { return std::strtod(fmt12(v).c_str(), nullptr); }

json jnum(double v) { return json(round12(v)); }

struct CommonArgs {
  std::string scenario_path;
  std::string out_dir;
  double tau_max = 0.0;  // 0 keeps the command default
  double step = 0.1;
  std::string objective = "return";
  bool quiet = false;
};

Objective to_objective(const std::string& name) {
  return name == "profit" ? Objective::ProfitRate : Objective::ReturnRate;
}

fs::path ensure_out_dir(const std::string& dir) {
  fs::path p(dir);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());
  return p;
}

using Row = std::vector<double>;

void write_csv_stream(std::ostream& os, const std::vector<std::string>& header,
                      const std::vector<Row>& rows) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    os << (i ? "," : "") << header[i];
  }
  os << "\n";
  for (const Row& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      os << (i ? "," : "") << fmt12(row[i]);
    }
    os << "\n";
  }
}

std::string write_csv_file(const fs::path& dir, const std::string& name,
                           const std::vector<std::string>& header,
                           const std::vector<Row>& rows) {
  const fs::path path = dir / name;
  std::ofstream os(path);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  write_csv_stream(os, header, rows);
  if (!os) throw IoError("failed writing " + path.string());
  return path.string();
}

json report_json(const RotationReport& rep) {
  return json{{"rotation", jnum(rep.rotation)},
              {"expected_profit_rate", jnum(rep.expected_profit_rate)},
              {"expected_capitalization", jnum(rep.expected_capitalization)},
              {"expected_return_rate", jnum(rep.expected_return_rate)},
              {"terminal_volume", jnum(rep.terminal_volume)},
              {"thinned_volume", jnum(rep.thinned_volume)}};
}

json plan_json(const ManagementPlan& plan) {
  json thinnings = json::array();
  for (const ThinningEvent& ev : plan.thinnings) {
    thinnings.push_back({{"age", jnum(ev.age)}, {"removed", jnum(ev.removed)}});
  }
  json response{{"model", plan.response.model == ThinningModel::Constant ? "constant"
                                                                         : "decaying"}};
  if (plan.response.model == ThinningModel::Constant) {
    response["boost"] = jnum(plan.response.boost);
  } else {
    response["decay_rate"] = jnum(plan.response.decay_rate);
  }
  return json{{"rotation", jnum(plan.rotation)},
              {"thinnings", std::move(thinnings)},
              {"response", std::move(response)}};
}

void emit(const json& summary, const CommonArgs& args, std::ostream& out) {
  if (!args.quiet) out << summary.dump(2) << "\n";
}

const ManagementPlan& require_plan(const Scenario& scenario, const char* command) {
  if (!scenario.plan) {
    throw DomainError(std::string("scenario \"") + scenario.name +
                      "\" has no plan block; " + command + " needs one");
  }
  return *scenario.plan;
}

int cmd_evaluate(const Scenario& scenario, const CommonArgs& args, std::ostream& out) {
  const ManagementPlan& plan = require_plan(scenario, "evaluate");
  const VolumeTrajectory traj = build_trajectory(scenario.yield, plan, args.step);
  const AccrualLedger ledger = build_ledger(traj, scenario.econ);
  const RotationReport rep = expected_rates(traj, scenario.econ);

  json summary{{"command", "evaluate"},
               {"scenario", scenario.name},
               {"report", report_json(rep)},
               {"integrated_profit", jnum(ledger.integrated_profit)},
               {"impulse_total", jnum(ledger.impulse_total)},
               {"plan", plan_json(plan)}};
  json thinnings = json::array();
  for (const ResolvedThinning& ev : traj.thinnings) {
    thinnings.push_back({{"age", jnum(ev.age)},
                         {"removed", jnum(ev.removed)},
                         {"standing_before", jnum(ev.standing_before)},
                         {"intensity", jnum(ev.intensity)}});
  }
  summary["resolved_thinnings"] = std::move(thinnings);

  if (!args.out_dir.empty()) {
    const fs::path dir = ensure_out_dir(args.out_dir);
    std::vector<Row> traj_rows;
    traj_rows.reserve(traj.samples.size());
    for (const TrajectorySample& s : traj.samples) traj_rows.push_back({s.age, s.volume});
    std::vector<Row> ledger_rows;
    ledger_rows.reserve(ledger.samples.size());
    for (const LedgerSample& s : ledger.samples) {
      ledger_rows.push_back({s.age, s.capitalization, s.profit_density});
    }
    summary["files"] = json::array(
        {write_csv_file(dir, "trajectory.csv", {"age", "volume"}, traj_rows),
         write_csv_file(dir, "ledger.csv", {"age", "capitalization", "profit_density"},
                        ledger_rows)});
  }
  emit(summary, args, out);
  return kExitOk;
}

int cmd_optimize_rotation(const Scenario& scenario, const CommonArgs& args, std::ostream& out) {
  RotationSearchOptions options;
  if (args.tau_max > 0.0) options.tau_max = args.tau_max;
  options.sample_step = args.step;
  const Objective objective = to_objective(args.objective);
  const OptimizationResult result =
      optimize_rotation(scenario.yield, scenario.econ, objective, options);

  json summary{{"command", "optimize-rotation"},
               {"scenario", scenario.name},
               {"objective", args.objective},
               {"rotation", jnum(result.rotation)},
               {"objective_value", jnum(result.objective_value)},
               {"report", report_json(result.report)}};

  if (!args.out_dir.empty()) {
    const fs::path dir = ensure_out_dir(args.out_dir);
    RotationEvaluator evaluator(scenario.yield, scenario.econ, options.tau_max,
                                options.sample_step);
    std::vector<Row> rows;
    ManagementPlan plan;
    for (double tau = options.coarse_step; tau <= options.tau_max;
         tau += options.coarse_step) {
      plan.rotation = tau;
      const RotationReport rep = evaluator.report(plan);
      rows.push_back({tau, rep.expected_profit_rate, rep.expected_capitalization,
                      rep.expected_return_rate});
    }
    summary["files"] = json::array({write_csv_file(
        dir, "rotation_objective.csv",
        {"rotation", "expected_profit_rate", "expected_capitalization",
         "expected_return_rate"},
        rows)});
  }
  emit(summary, args, out);
  return kExitOk;
}

int cmd_optimize_thinnings(const Scenario& scenario, const CommonArgs& args, double delta,
                           bool has_delta, double decay, bool has_decay, std::ostream& out) {
  ThinningResponse response;
  if (has_delta) {
    response.model = ThinningModel::Constant;
    response.boost = delta;
  } else if (has_decay) {
    response.model = ThinningModel::Decaying;
    response.decay_rate = decay;
  } else if (scenario.plan) {
    response = scenario.plan->response;
  }

  ThinningSearchOptions options;
  if (args.tau_max > 0.0) options.tau_max = args.tau_max;
  options.sample_step = args.step;
  const Objective objective = to_objective(args.objective);
  const ThinningSearchResult result =
      optimize_thinnings(scenario.yield, scenario.econ, response, 2, objective, options);

  json summary{{"command", "optimize-thinnings"},
               {"scenario", scenario.name},
               {"objective", args.objective},
               {"best", json{{"plan", plan_json(result.best_plan)},
                             {"objective_value", jnum(result.best_objective)},
                             {"report", report_json(result.best_report)}}},
               {"benchmark", json{{"rotation", jnum(result.no_thinning.rotation)},
                                  {"objective_value",
                                   jnum(result.no_thinning.objective_value)}}},
               {"thinning_beneficial", result.thinning_beneficial},
               {"plans_evaluated", result.plans_evaluated}};

  if (!args.out_dir.empty()) {
    const fs::path dir = ensure_out_dir(args.out_dir);
    const RotationEvaluator evaluator(scenario.yield, scenario.econ,
                                      std::max(options.tau_max, result.best_plan.rotation),
                                      options.sample_step);
    const VolumeTrajectory traj = evaluator.trajectory(result.best_plan);
    std::vector<Row> rows;
    rows.reserve(traj.samples.size());
    for (const TrajectorySample& s : traj.samples) rows.push_back({s.age, s.volume});
    summary["files"] = json::array(
        {write_csv_file(dir, "best_thinned_trajectory.csv", {"age", "volume"}, rows)});
  }
  emit(summary, args, out);
  return kExitOk;
}

int cmd_break_even(const Scenario& scenario, const CommonArgs& args, std::ostream& out) {
  const double tau = break_even_rotation(scenario.yield, scenario.econ);
  json summary{{"command", "break-even"},
               {"scenario", scenario.name},
               {"break_even_rotation", jnum(tau)}};
  emit(summary, args, out);
  return kExitOk;
}

int cmd_price_invariance(const Scenario& scenario, const CommonArgs& args,
                         const std::vector<double>& offsets, std::ostream& out) {
  if (!scenario.prices) {
    throw DomainError("scenario \"" + scenario.name +
                      "\" has no prices block; price-invariance needs one");
  }
  ManagementPlan plan;
  if (scenario.plan) plan = *scenario.plan;
  if (plan.rotation <= 0.0) plan.rotation = 1.0;  // placeholder; rotation is re-optimized

  const InvarianceReport report = verify_return_rate_invariance(
      scenario.yield, scenario.econ, plan, *scenario.prices, scenario.prices->origin,
      offsets);

  json rows = json::array();
  for (const InvarianceRow& row : report.rows) {
    rows.push_back({{"offset", jnum(row.offset)},
                    {"window_start", jnum(row.window_start)},
                    {"price_multiplier", jnum(row.price_multiplier)},
                    {"scaled_profit_rate", jnum(row.scaled_profit_rate)},
                    {"scaled_capitalization", jnum(row.scaled_capitalization)},
                    {"return_rate", jnum(row.return_rate)},
                    {"optimal_rotation", jnum(row.optimal_rotation)}});
  }
  json summary{{"command", "price-invariance"},
               {"scenario", scenario.name},
               {"stationary_profit_rate", jnum(report.stationary_profit_rate)},
               {"stationary_capitalization", jnum(report.stationary_capitalization)},
               {"rows", std::move(rows)},
               {"max_return_rate_spread", jnum(report.max_return_rate_spread)},
               {"max_rotation_spread", jnum(report.max_rotation_spread)},
               {"invariant", report.invariant}};
  emit(summary, args, out);
  return kExitOk;
}

int cmd_sensitivity(const Scenario& scenario, const CommonArgs& args, std::ostream& out) {
  RotationSearchOptions options;
  if (args.tau_max > 0.0) options.tau_max = args.tau_max;
  options.sample_step = args.step;
  const std::vector<double> multipliers = {0.5, 1.0, 2.0};
  const Objective objective = to_objective(args.objective);
  const std::vector<SweepCell> cells = sensitivity_sweep(
      scenario.yield, scenario.econ, objective, multipliers, multipliers, options);

  const std::size_t n = multipliers.size();
  bool monotone_price = true;
  bool monotone_expense = true;
  for (std::size_t e = 0; e < n; ++e) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      if (cells[e * n + p + 1].optimal_rotation > cells[e * n + p].optimal_rotation) {
        monotone_price = false;
      }
    }
  }
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t e = 0; e + 1 < n; ++e) {
      if (cells[(e + 1) * n + p].optimal_rotation < cells[e * n + p].optimal_rotation) {
        monotone_expense = false;
      }
    }
  }

  json cell_rows = json::array();
  std::vector<Row> csv_rows;
  for (const SweepCell& cell : cells) {
    cell_rows.push_back({{"price_multiplier", jnum(cell.price_multiplier)},
                         {"expense_multiplier", jnum(cell.expense_multiplier)},
                         {"optimal_rotation", jnum(cell.optimal_rotation)},
                         {"objective_value", jnum(cell.objective_value)}});
    csv_rows.push_back({cell.price_multiplier, cell.expense_multiplier,
                        cell.optimal_rotation, cell.objective_value});
  }
  json summary{{"command", "sensitivity"},
               {"scenario", scenario.name},
               {"objective", args.objective},
               {"cells", std::move(cell_rows)},
               {"rotation_shrinks_with_price", monotone_price},
               {"rotation_grows_with_expenses", monotone_expense}};
  if (!args.out_dir.empty()) {
    const fs::path dir = ensure_out_dir(args.out_dir);
    summary["files"] = json::array({write_csv_file(
        dir, "sensitivity.csv",
        {"price_multiplier", "expense_multiplier", "optimal_rotation", "objective_value"},
        csv_rows)});
  }
  emit(summary, args, out);
  return kExitOk;
}

int cmd_curves(const Scenario& scenario, const CommonArgs& args, std::ostream& out) {
  const double tau_max = args.tau_max > 0.0 ? args.tau_max : 100.0;
  const int last = static_cast<int>(std::floor(tau_max));
  if (last < 1) throw DomainError("curves needs tau_max of at least 1 year");

  RotationEvaluator evaluator(scenario.yield, scenario.econ, tau_max, args.step);
  std::vector<Row> rows;
  rows.reserve(static_cast<std::size_t>(last));
  ManagementPlan plan;
  for (int k = 1; k <= last; ++k) {
    const double age = static_cast<double>(k);
    plan.rotation = age;
    const RotationReport rep = evaluator.report(plan);
    rows.push_back({age, volume(scenario.yield, age),
                    volume_derivative(scenario.yield, age),
                    scenario.econ.bare_land_value +
                        scenario.econ.stumpage_price * volume(scenario.yield, age),
                    scenario.econ.stumpage_price * volume_derivative(scenario.yield, age) -
                        scenario.econ.annual_overhead,
                    rep.expected_profit_rate, rep.expected_capitalization,
                    rep.expected_return_rate});
  }
  const std::vector<std::string> header = {
      "age", "volume", "growth_rate", "capitalization", "profit_density",
      "expected_profit_rate", "expected_capitalization", "expected_return_rate"};

  if (args.out_dir.empty()) {
    write_csv_stream(out, header, rows);
    return kExitOk;
  }
  const fs::path dir = ensure_out_dir(args.out_dir);
  json summary{{"command", "curves"},
               {"scenario", scenario.name},
               {"rows", static_cast<int>(rows.size())},
               {"files", json::array({write_csv_file(dir, "curves.csv", header, rows)})}};
  emit(summary, args, out);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rotation economics of even-aged stands: accrual accounting, expected "
               "return rates, and rotation/thinning optimization"};
  app.name("rotecon");
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::simple);

  CommonArgs common;
  double delta = 0.0;
  double decay = 0.0;
  std::vector<double> offsets = {0.0, 5.0, 10.0, 17.3, 40.0};

  auto add_common = [&](CLI::App* cmd, bool needs_step = true) {
    cmd->add_option("--scenario,-s", common.scenario_path, "scenario JSON file")
        ->required();
    cmd->add_option("--out,-o", common.out_dir, "directory for CSV series");
    cmd->add_flag("--quiet,-q", common.quiet, "suppress the JSON summary");
    if (needs_step) {
      cmd->add_option("--step", common.step, "trajectory sampling step in years")
          ->check(CLI::PositiveNumber);
    }
  };
  auto add_objective = [&](CLI::App* cmd) {
    cmd->add_option("--objective", common.objective,
                    "optimization target: return (rate) or profit (rate)")
        ->check(CLI::IsMember({"return", "profit"}));
  };
  auto add_tau_max = [&](CLI::App* cmd, const char* help) {
    cmd->add_option("--tau-max", common.tau_max, help)->check(CLI::PositiveNumber);
  };

  CLI::App* evaluate = app.add_subcommand("evaluate", "evaluate one management plan");
  add_common(evaluate);

  CLI::App* opt_rot = app.add_subcommand("optimize-rotation",
                                         "optimal thinning-free clearcut age");
  add_common(opt_rot);
  add_objective(opt_rot);
  add_tau_max(opt_rot, "rotation search ceiling in years (default 300)");

  CLI::App* opt_thin = app.add_subcommand("optimize-thinnings",
                                          "exhaustive thinning schedule search");
  add_common(opt_thin);
  add_objective(opt_thin);
  add_tau_max(opt_thin, "thinned rotation ceiling in years (default 100)");
  CLI::Option* delta_opt =
      opt_thin->add_option("--delta", delta, "constant-response growth boost");
  CLI::Option* decay_opt =
      opt_thin->add_option("--decay", decay, "decaying-response scar decay rate")
          ->check(CLI::PositiveNumber);
  delta_opt->excludes(decay_opt);
  decay_opt->excludes(delta_opt);

  CLI::App* break_even = app.add_subcommand("break-even",
                                            "shortest rotation with nonnegative profit");
  add_common(break_even, false);

  CLI::App* invariance = app.add_subcommand(
      "price-invariance", "return-rate invariance across price-window offsets");
  add_common(invariance);
  invariance->add_option("--offsets", offsets, "window start offsets in years")
      ->delimiter(',');

  CLI::App* sensitivity = app.add_subcommand(
      "sensitivity", "optimal rotation under scaled prices and expenses");
  add_common(sensitivity);
  add_objective(sensitivity);
  add_tau_max(sensitivity, "rotation search ceiling in years (default 300)");

  CLI::App* curves = app.add_subcommand("curves",
                                        "thinning-free yield and rate series");
  add_common(curves);
  add_tau_max(curves, "last age in the series (default 100)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const Scenario scenario = load_scenario(common.scenario_path);
    if (*evaluate) return cmd_evaluate(scenario, common, out);
    if (*opt_rot) return cmd_optimize_rotation(scenario, common, out);
    if (*opt_thin) {
      return cmd_optimize_thinnings(scenario, common, delta, delta_opt->count() > 0, decay,
                                    decay_opt->count() > 0, out);
    }
    if (*break_even) return cmd_break_even(scenario, common, out);
    if (*invariance) return cmd_price_invariance(scenario, common, offsets, out);
    if (*sensitivity) return cmd_sensitivity(scenario, common, out);
    if (*curves) return cmd_curves(scenario, common, out);
    err << "error: no command selected\n";
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitComputation;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace rotecon
