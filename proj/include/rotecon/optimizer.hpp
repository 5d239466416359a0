#pragma once

#include <functional>
#include <vector>

#include "rotecon/accounting.hpp"
#include "rotecon/growth.hpp"

namespace rotecon {

enum class Objective {
  ReturnRate,  // expected profit rate / expected capitalization
  ProfitRate,  // expected profit rate
};

struct RotationSearchOptions {
  double tau_max = 300.0;          // yr, search ceiling
  double coarse_step = 1.0;        // yr, scan resolution before refinement
  double refine_tolerance = 0.01;  // yr, golden-section bracket width
  double tie_tolerance = 1e-9;     // objective ties resolve to the shorter rotation
  double sample_step = 0.1;        // yr, trajectory quadrature step
};

struct OptimizationResult {
  Objective objective = Objective::ReturnRate;
  double rotation = 0.0;
  double objective_value = 0.0;
  RotationReport report;  // full evaluation at the optimum
};

struct ThinningSearchOptions {
  double tau_max = 100.0;  // yr, ceiling for thinned rotations
  std::vector<double> intensities = {0.1, 0.2, 0.3, 0.4};  // removed / standing
  int refine_top = 32;             // schedules kept for continuous refinement
  double refine_tolerance = 0.01;  // yr
  double tie_tolerance = 1e-9;
  double sample_step = 0.1;        // yr
};

struct ThinningSearchResult {
  ManagementPlan best_plan;       // best thinned schedule found
  RotationReport best_report;
  double best_objective = 0.0;
  OptimizationResult no_thinning; // thinning-free benchmark, same objective
  bool thinning_beneficial = false;
  long long plans_evaluated = 0;
};

// Evaluates many plans against one yield/econ pair. Caches the unthinned
// volume on the sampling grid; grid-aligned trajectory samples are
// bit-identical to build_trajectory's.
class RotationEvaluator {
 public:
  RotationEvaluator(const YieldParams& params, const EconParams& econ, double tau_max,
                    double sample_step);

  VolumeTrajectory trajectory(const ManagementPlan& plan) const;
  RotationReport report(const ManagementPlan& plan) const;
  double objective(const ManagementPlan& plan, Objective objective) const;

  const YieldParams& params() const { return params_; }
  const EconParams& econ() const { return econ_; }
  double tau_max() const { return tau_max_; }
  double sample_step() const { return step_; }

 private:
  YieldParams params_;
  EconParams econ_;
  double tau_max_;
  double step_;
  std::vector<double> grid_;  // unthinned volume at i * sample_step

  double unthinned(double age) const;
};

// Optimal thinning-free rotation under `objective`. Coarse scan over
// (0, tau_max] then golden-section refinement; ties within tie_tolerance
// resolve to the shorter rotation.
OptimizationResult optimize_rotation(const YieldParams& params, const EconParams& econ,
                                     Objective objective,
                                     const RotationSearchOptions& options = {});

// Exhaustive search over thinning schedules with up to `max_events` events:
// thinning ages on the 1-year grid, intensities from `options.intensities`,
// clearcut on the 1-year grid at least one year past the last thinning (the
// response model is calibrated on annual steps), then continuous refinement
// of the best schedules. The thinning-free benchmark is optimized with
// default rotation options. `thinning_beneficial` is true when the best
// thinned schedule beats the benchmark by more than tie_tolerance.
ThinningSearchResult optimize_thinnings(const YieldParams& params, const EconParams& econ,
                                        const ThinningResponse& response, int max_events,
                                        Objective objective,
                                        const ThinningSearchOptions& options = {});

// Frontier-style stylized stand: net price f ($/MBF), constant growth rate
// vdot (MBF/acre/yr), expense rate g ($/acre/yr). Capital alternates
// uniformly over the rotation, giving
//   r(tau) = (f vdot tau - g) / ((tau / 2) (f vdot tau + g)).
struct StylizedParams {
  double net_price = 0.0;    // > 0
  double growth_rate = 0.0;  // > 0
  double expenses = 0.0;     // > 0

  void validate() const;
};

// r(tau) above. Throws DomainError when tau <= 0.
double stylized_return(const StylizedParams& params, double tau);

// Closed-form argmax of stylized_return:
//   tau* = g / (f vdot (sqrt(2) - 1)).
double stylized_optimal_rotation(const StylizedParams& params);

struct SweepCell {
  double price_multiplier = 0.0;
  double expense_multiplier = 0.0;
  double optimal_rotation = 0.0;
  double objective_value = 0.0;
};

// Re-optimizes the rotation under scaled prices and expenses. The price
// multiplier scales the stumpage price; the expense multiplier scales
// establishment cost, overhead, and bare land value together, so equal
// multipliers leave the return rate, and hence the optimum, unchanged.
// Cells are emitted expense-major in the given order.
std::vector<SweepCell> sensitivity_sweep(const YieldParams& params, const EconParams& econ,
                                         Objective objective,
                                         const std::vector<double>& price_multipliers,
                                         const std::vector<double>& expense_multipliers,
                                         const RotationSearchOptions& options = {});

namespace detail {

struct ScanResult {
  double argmax = 0.0;
  double value = 0.0;
};

// Coarse scan of `objective` over [tau_min, tau_max] at `coarse_step`, then
// golden-section refinement around the best node down to a bracket of
// `refine_tolerance`. Ties within tie_tolerance prefer the smaller argument.
ScanResult maximize_over_rotation(const std::function<double(double)>& objective,
                                  double tau_min, double tau_max, double coarse_step,
                                  double refine_tolerance, double tie_tolerance);

}  // namespace detail

}  // namespace rotecon
