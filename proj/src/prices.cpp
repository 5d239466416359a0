#include "rotecon/prices.hpp"

#include <algorithm>
#include <cmath>

#include "rotecon/optimizer.hpp"

namespace rotecon {

namespace {

// Below this |ln rho| the closed forms lose digits to cancellation; a
// second-order series in ln rho is exact to ~1e-15 there.
constexpr double kLogGuard = 1e-6;

void check_coefficient(double rho) {
  if (rho == 1.0) {
    throw SingularParameterError(
        "price trend coefficient of exactly 1 makes the level formula degenerate");
  }
  if (!(rho > 0.0)) {
    throw SingularParameterError("price trend coefficient must be positive");
  }
}

}  // namespace

void PriceProcess::validate() const {
  if (!(initial_level > 0.0)) throw ValidationError("initial price level must be positive");
  if (!(coefficient > 0.0)) throw ValidationError("price coefficient must be positive");
  if (!(time_scale > 0.0)) throw ValidationError("price time scale must be positive");
}

double ar1_step(const PriceProcess& process, double previous) {
  return process.initial_level + process.coefficient * previous;
}

double price_level(const PriceProcess& process, double t) {
  check_coefficient(process.coefficient);
  const double L = std::log(process.coefficient);
  const double x = process.time_scale * (t - process.origin);
  if (std::abs(L) < kLogGuard) {
    return process.initial_level * (1.0 + x + L * x * x / 2.0 + L * L * x * x * x / 6.0);
  }
  return process.initial_level * (1.0 + std::expm1(x * L) / L);
}

double expected_price(const PriceProcess& process, double b, double tau) {
  check_coefficient(process.coefficient);
  if (!(tau > 0.0)) {
    throw SingularParameterError("expectation window length must be positive");
  }
  const double L = std::log(process.coefficient);
  const double beta = process.time_scale * (b - process.origin);
  const double T = process.time_scale * tau;
  if (std::abs(L) < kLogGuard) {
    const double c1 = T * T / 6.0 + beta * T / 2.0 + beta * beta / 2.0;
    const double c2 =
        T * T * T / 24.0 + beta * T * T / 6.0 + beta * beta * T / 4.0 + beta * beta * beta / 6.0;
    return process.initial_level * (1.0 + beta + T / 2.0 + L * c1 + L * L * c2);
  }
  return process.initial_level *
         (1.0 - 1.0 / L + std::exp(beta * L) * std::expm1(T * L) / (T * L * L));
}

double window_prefactor(const PriceProcess& process, double b, double b_star, double tau) {
  return expected_price(process, b_star, tau) / expected_price(process, b, tau);
}

InvarianceReport verify_return_rate_invariance(const YieldParams& params,
                                               const EconParams& econ,
                                               const ManagementPlan& plan,
                                               const PriceProcess& process, double b,
                                               const std::vector<double>& offsets,
                                               double tolerance) {
  params.validate();
  econ.validate();
  plan.validate();
  process.validate();
  if (offsets.empty()) throw DomainError("invariance check needs at least one offset");

  RotationSearchOptions opts;
  RotationEvaluator evaluator(params, econ, opts.tau_max, opts.sample_step);

  double tau_min = opts.coarse_step;
  if (!plan.thinnings.empty()) {
    tau_min = std::max(tau_min, plan.thinnings.back().age + 1.0);
  }

  InvarianceReport out;
  out.rows.reserve(offsets.size());
  for (double offset : offsets) {
    const double start = b + offset;
    auto scaled_report = [&](double tau) {
      ManagementPlan candidate = plan;
      candidate.rotation = tau;
      RotationReport rep = evaluator.report(candidate);
      const double mult = expected_price(process, start, tau) / process.initial_level;
      rep.expected_profit_rate *= mult;
      rep.expected_capitalization *= mult;
      rep.expected_return_rate = rep.expected_profit_rate / rep.expected_capitalization;
      return rep;
    };
    const detail::ScanResult best = detail::maximize_over_rotation(
        [&](double tau) { return scaled_report(tau).expected_return_rate; }, tau_min,
        opts.tau_max, opts.coarse_step, opts.refine_tolerance, opts.tie_tolerance);

    InvarianceRow row;
    row.offset = offset;
    row.window_start = start;
    row.optimal_rotation = best.argmax;
    const RotationReport rep = scaled_report(best.argmax);
    row.price_multiplier =
        expected_price(process, start, best.argmax) / process.initial_level;
    row.scaled_profit_rate = rep.expected_profit_rate;
    row.scaled_capitalization = rep.expected_capitalization;
    row.return_rate = rep.expected_return_rate;
    out.rows.push_back(row);
  }

  const InvarianceRow& first = out.rows.front();
  {
    ManagementPlan stationary = plan;
    stationary.rotation = first.optimal_rotation;
    const RotationReport rep = evaluator.report(stationary);
    out.stationary_profit_rate = rep.expected_profit_rate;
    out.stationary_capitalization = rep.expected_capitalization;
  }
  for (const InvarianceRow& row : out.rows) {
    out.max_return_rate_spread =
        std::max(out.max_return_rate_spread, std::abs(row.return_rate - first.return_rate));
    out.max_rotation_spread =
        std::max(out.max_rotation_spread, std::abs(row.optimal_rotation - first.optimal_rotation));
  }
  out.invariant =
      out.max_return_rate_spread <= tolerance && out.max_rotation_spread <= tolerance;
  return out;
}

}  // namespace rotecon
