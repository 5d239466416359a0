#pragma once

#include <vector>

#include "rotecon/accounting.hpp"
#include "rotecon/growth.hpp"

namespace rotecon {

// Trending stumpage price level. `coefficient` is the one-step
// autocorrelation of the underlying discrete recursion, `time_scale` converts
// calendar years to recursion steps, `origin` anchors the level
// `initial_level` at calendar time t = origin.
struct PriceProcess {
  double initial_level = 0.0;  // $/MBF, > 0
  double coefficient = 0.0;    // > 0; the formulas degenerate at exactly 1
  double time_scale = 1.0;     // steps/yr, > 0
  double origin = 0.0;         // yr

  void validate() const;
};

// One step of the underlying discrete recursion:
//   next = initial_level + coefficient * previous.
// Exists as the sampling primitive; the continuous forms below are
// authoritative for expectations.
double ar1_step(const PriceProcess& process, double previous);

// Continuous price level at calendar time t:
//   u(t) = u0 * (1 + (rho^{z (t - t0)} - 1) / ln rho).
// Extrapolates for t < origin as well. Switches to a series in ln rho when
// |ln rho| < 1e-6; throws SingularParameterError at rho exactly 1.
double price_level(const PriceProcess& process, double t);

// Average of price_level over the window [b, b + tau] (equivalently the
// expected price seen by a rotation whose evaluation date is uniform over
// the window). Closed form; same series guard near rho = 1. Throws
// SingularParameterError when tau <= 0 or rho is exactly 1.
double expected_price(const PriceProcess& process, double b, double tau);

// Ratio expected_price(b_star, tau) / expected_price(b, tau): the factor by
// which every expected monetary aggregate of a rotation scales when the
// evaluation window opens at b_star instead of b.
double window_prefactor(const PriceProcess& process, double b, double b_star, double tau);

// One evaluation-window placement in an invariance check.
struct InvarianceRow {
  double offset = 0.0;             // window start shift relative to b
  double window_start = 0.0;       // b + offset
  double price_multiplier = 0.0;   // expected price over the window / u0
  double scaled_profit_rate = 0.0;
  double scaled_capitalization = 0.0;
  double return_rate = 0.0;
  double optimal_rotation = 0.0;   // argmax of the scaled return rate
};

struct InvarianceReport {
  double stationary_profit_rate = 0.0;     // at the first window's optimum
  double stationary_capitalization = 0.0;
  std::vector<InvarianceRow> rows;
  double max_return_rate_spread = 0.0;     // across rows, at each row's optimum
  double max_rotation_spread = 0.0;
  bool invariant = false;                  // both spreads within tolerance
};

// Checks that the return rate and its optimal rotation do not depend on
// where the evaluation window sits on the price trend: expectations
// factorize into a stationary part times the expected price multiplier, and
// the multiplier cancels from the return-rate ratio. For each offset the
// scaled aggregates are recomputed and the rotation re-optimized under the
// scaled objective; `tolerance` bounds both spreads for `invariant`.
InvarianceReport verify_return_rate_invariance(const YieldParams& params,
                                               const EconParams& econ,
                                               const ManagementPlan& plan,
                                               const PriceProcess& process, double b,
                                               const std::vector<double>& offsets,
                                               double tolerance = 1e-9);

}  // namespace rotecon
