#include "rotecon/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace rotecon {

namespace detail {

namespace {

// Golden ratio conjugate; classic two-interior-point bracket shrink.
constexpr double kInvPhi = 0.6180339887498949;

}  // namespace

ScanResult maximize_over_rotation(const std::function<double(double)>& objective,
                                  double tau_min, double tau_max, double coarse_step,
                                  double refine_tolerance, double tie_tolerance) {
  if (!(tau_min > 0.0) || !(tau_max >= tau_min)) {
    throw DomainError("rotation search needs 0 < tau_min <= tau_max");
  }
  if (!(coarse_step > 0.0) || !(refine_tolerance > 0.0)) {
    throw DomainError("rotation search steps must be positive");
  }

  double best_tau = tau_min;
  double best_val = objective(tau_min);
  for (std::size_t k = 1;; ++k) {
    double tau = tau_min + static_cast<double>(k) * coarse_step;
    if (tau > tau_max) {
      if (tau - coarse_step < tau_max) tau = tau_max;  // always probe the ceiling
      else break;
    }
    const double val = objective(tau);
    if (val > best_val + tie_tolerance) {
      best_val = val;
      best_tau = tau;
    }
    if (tau == tau_max) break;
  }

  double lo = std::max({tau_min, refine_tolerance, best_tau - coarse_step});
  double hi = std::min(tau_max, best_tau + coarse_step);
  if (hi - lo <= refine_tolerance) return {best_tau, best_val};

  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = objective(x1);
  double f2 = objective(x2);
  while (hi - lo > refine_tolerance) {
    // On ties keep the left subinterval, so the shorter rotation wins.
    if (f1 >= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = objective(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = objective(x2);
    }
  }
  const double mid = 0.5 * (lo + hi);
  return {mid, objective(mid)};
}

}  // namespace detail

RotationEvaluator::RotationEvaluator(const YieldParams& params, const EconParams& econ,
                                     double tau_max, double sample_step)
    : params_(params), econ_(econ), tau_max_(tau_max), step_(sample_step) {
  params_.validate();
  econ_.validate();
  if (!(tau_max_ > 0.0) || !(step_ > 0.0)) {
    throw DomainError("evaluator needs positive tau_max and sample step");
  }
  grid_.reserve(static_cast<std::size_t>(tau_max_ / step_) + 2);
  for (std::size_t i = 0;; ++i) {
    const double t = static_cast<double>(i) * step_;
    if (t > tau_max_) break;
    grid_.push_back(volume(params_, t));
  }
}

double RotationEvaluator::unthinned(double age) const {
  const auto i = static_cast<std::size_t>(std::llround(age / step_));
  if (i < grid_.size() && static_cast<double>(i) * step_ == age) return grid_[i];
  return volume(params_, age);
}

VolumeTrajectory RotationEvaluator::trajectory(const ManagementPlan& plan) const {
  return detail::build_trajectory_with(params_, plan, step_,
                                       [this](double t) { return unthinned(t); });
}

RotationReport RotationEvaluator::report(const ManagementPlan& plan) const {
  return expected_rates(trajectory(plan), econ_);
}

double RotationEvaluator::objective(const ManagementPlan& plan, Objective objective) const {
  const RotationReport rep = report(plan);
  return objective == Objective::ReturnRate ? rep.expected_return_rate
                                            : rep.expected_profit_rate;
}

OptimizationResult optimize_rotation(const YieldParams& params, const EconParams& econ,
                                     Objective objective, const RotationSearchOptions& options) {
  if (!(options.tau_max >= options.coarse_step)) {
    throw DomainError("tau_max must be at least one coarse step");
  }
  RotationEvaluator evaluator(params, econ, options.tau_max, options.sample_step);
  ManagementPlan plan;
  auto objfn = [&](double tau) {
    plan.rotation = tau;
    return evaluator.objective(plan, objective);
  };
  const detail::ScanResult best =
      detail::maximize_over_rotation(objfn, options.coarse_step, options.tau_max,
                                     options.coarse_step, options.refine_tolerance,
                                     options.tie_tolerance);
  OptimizationResult out;
  out.objective = objective;
  out.rotation = best.argmax;
  out.objective_value = best.value;
  plan.rotation = best.argmax;
  out.report = evaluator.report(plan);
  return out;
}

void StylizedParams::validate() const {
  if (!(net_price > 0.0)) throw ValidationError("stylized net price must be positive");
  if (!(growth_rate > 0.0)) throw ValidationError("stylized growth rate must be positive");
  if (!(expenses > 0.0)) throw ValidationError("stylized expense rate must be positive");
}

double stylized_return(const StylizedParams& params, double tau) {
  params.validate();
  if (!(tau > 0.0)) throw DomainError("stylized rotation must be positive");
  const double accrual = params.net_price * params.growth_rate * tau;
  return (accrual - params.expenses) / ((tau / 2.0) * (accrual + params.expenses));
}

double stylized_optimal_rotation(const StylizedParams& params) {
  params.validate();
  return params.expenses /
         (params.net_price * params.growth_rate * (std::numbers::sqrt2 - 1.0));
}

std::vector<SweepCell> sensitivity_sweep(const YieldParams& params, const EconParams& econ,
                                         Objective objective,
                                         const std::vector<double>& price_multipliers,
                                         const std::vector<double>& expense_multipliers,
                                         const RotationSearchOptions& options) {
  if (price_multipliers.empty() || expense_multipliers.empty()) {
    throw DomainError("sensitivity sweep needs at least one multiplier per axis");
  }
  std::vector<SweepCell> cells;
  cells.reserve(price_multipliers.size() * expense_multipliers.size());
  for (double em : expense_multipliers) {
    for (double pm : price_multipliers) {
      if (!(pm > 0.0) || !(em > 0.0)) {
        throw DomainError("sensitivity multipliers must be positive");
      }
      EconParams scaled = econ;
      scaled.stumpage_price = econ.stumpage_price * pm;
      scaled.establishment_cost = econ.establishment_cost * em;
      scaled.bare_land_value = econ.bare_land_value * em;
      scaled.annual_overhead = econ.annual_overhead * em;
      const OptimizationResult r = optimize_rotation(params, scaled, objective, options);
      cells.push_back({pm, em, r.rotation, r.objective_value});
    }
  }
  return cells;
}

namespace {

// One thinning schedule during the exhaustive sweep: integer ages plus
// removal fractions; removals in MBF/acre are resolved against the corrected
// standing volume during the walk.
struct SweepSchedule {
  int ages[2] = {0, 0};
  double fractions[2] = {0.0, 0.0};
  int count = 0;
};

struct SweepCandidate {
  SweepSchedule schedule;
  double removed[2] = {0.0, 0.0};  // resolved removals at the best rotation
  int best_tau = 0;
  double objective = -std::numeric_limits<double>::infinity();
};

struct SweepPoint {
  double age = 0.0;
  double unthinned = 0.0;
  int tau_index = -1;  // k when age is exactly the integer k, else -1
};

// Walks one schedule across the shared position grid and records the best
// integer clearcut age. Objective values here steer candidate selection
// only; every reported number is re-evaluated on the reference path.
void sweep_schedule(const std::vector<SweepPoint>& pts, const EconParams& econ,
                    const ThinningResponse& response, Objective objective,
                    SweepCandidate& cand, long long& evaluated) {
  const double price = econ.stumpage_price;
  const double blv = econ.bare_land_value;
  const SweepSchedule& sched = cand.schedule;
  const int tau_lo = sched.ages[sched.count - 1] + 1;

  double factor = 1.0;  // constant-model running correction
  double active_age[2];
  double active_q[2];
  int active = 0;
  int next_ev = 0;

  double profit = 0.0;
  double cap = 0.0;
  double last_age = 0.0;
  double last_post = 0.0;

  for (std::size_t j = 1; j < pts.size(); ++j) {
    const SweepPoint& pt = pts[j];
    double pre = pt.unthinned * factor;
    if (response.model == ThinningModel::Decaying) {
      for (int e = 0; e < active; ++e) {
        pre *= 1.0 - active_q[e] * std::exp(-response.decay_rate * (pt.age - active_age[e]));
      }
    }
    profit += price * (pre - last_post);
    cap += 0.5 * (2.0 * blv + price * (last_post + pre)) * (pt.age - last_age);

    if (next_ev < sched.count && pt.age == static_cast<double>(sched.ages[next_ev])) {
      const double q = sched.fractions[next_ev];
      cand.removed[next_ev] = q * pre;
      last_post = pre - cand.removed[next_ev];
      if (response.model == ThinningModel::Constant) {
        factor *= (1.0 - q) * (1.0 + q * response.boost);
      } else {
        active_age[active] = pt.age;
        active_q[active] = q;
        ++active;
      }
      ++next_ev;
    } else {
      last_post = pre;
    }
    last_age = pt.age;

    if (pt.tau_index >= tau_lo) {
      const double net = profit - econ.annual_overhead * pt.age - econ.establishment_cost;
      const double value = objective == Objective::ReturnRate
                               ? net / cap
                               : net / pt.age;
      ++evaluated;
      if (value > cand.objective) {
        cand.objective = value;
        cand.best_tau = pt.tau_index;
      }
    }
  }
}

ManagementPlan materialize(const SweepCandidate& cand, const ThinningResponse& response,
                           double rotation) {
  ManagementPlan plan;
  plan.rotation = rotation;
  plan.response = response;
  for (int e = 0; e < cand.schedule.count; ++e) {
    plan.thinnings.push_back(
        {static_cast<double>(cand.schedule.ages[e]), cand.removed[e]});
  }
  return plan;
}

// Deterministic preference order on near-ties: fewer thinnings, then shorter
// rotation, then earlier and lighter thinnings.
bool prefer_on_tie(const ManagementPlan& a, double tau_a, const ManagementPlan& b,
                   double tau_b) {
  if (a.thinnings.size() != b.thinnings.size()) {
    return a.thinnings.size() < b.thinnings.size();
  }
  if (tau_a != tau_b) return tau_a < tau_b;
  for (std::size_t i = 0; i < a.thinnings.size(); ++i) {
    if (a.thinnings[i].age != b.thinnings[i].age) {
      return a.thinnings[i].age < b.thinnings[i].age;
    }
    if (a.thinnings[i].removed != b.thinnings[i].removed) {
      return a.thinnings[i].removed < b.thinnings[i].removed;
    }
  }
  return false;
}

}  // namespace

ThinningSearchResult optimize_thinnings(const YieldParams& params, const EconParams& econ,
                                        const ThinningResponse& response, int max_events,
                                        Objective objective,
                                        const ThinningSearchOptions& options) {
  params.validate();
  econ.validate();
  response.validate();
  if (max_events < 1 || max_events > 2) {
    throw DomainError("thinning search supports 1 or 2 events per schedule");
  }
  if (options.intensities.empty()) {
    throw DomainError("thinning search needs at least one removal fraction");
  }
  for (double q : options.intensities) {
    if (!(q > 0.0) || !(q < 1.0)) {
      throw DomainError("removal fractions must lie strictly inside (0, 1)");
    }
  }
  const int tau_cap = static_cast<int>(std::floor(options.tau_max));
  if (tau_cap < 2) throw DomainError("tau_max leaves no room for a thinning plus clearcut");
  if (!(options.sample_step > 0.0)) throw DomainError("sample step must be positive");

  RotationEvaluator evaluator(params, econ, options.tau_max, options.sample_step);

  // Shared position grid: the sampling grid, with every integer age merged in
  // exactly so thinning events and clearcut candidates sit on exact nodes.
  std::vector<SweepPoint> pts;
  {
    std::vector<double> ages;
    const double ceiling = static_cast<double>(tau_cap);
    for (std::size_t i = 0;; ++i) {
      const double t = static_cast<double>(i) * options.sample_step;
      if (t >= ceiling) break;
      ages.push_back(t);
    }
    for (int k = 1; k <= tau_cap; ++k) {
      const double t = static_cast<double>(k);
      auto pos = std::lower_bound(ages.begin(), ages.end(), t);
      if (pos == ages.end() || *pos != t) ages.insert(pos, t);
    }
    pts.reserve(ages.size());
    for (double t : ages) {
      SweepPoint pt;
      pt.age = t;
      pt.unthinned = volume(params, t);
      const double rounded = std::round(t);
      pt.tau_index = (rounded == t) ? static_cast<int>(rounded) : -1;
      pts.push_back(pt);
    }
  }

  long long evaluated = 0;
  std::vector<SweepCandidate> candidates;

  for (int t1 = 1; t1 <= tau_cap - 1; ++t1) {
    for (double q1 : options.intensities) {
      SweepCandidate cand;
      cand.schedule.ages[0] = t1;
      cand.schedule.fractions[0] = q1;
      cand.schedule.count = 1;
      sweep_schedule(pts, econ, response, objective, cand, evaluated);
      if (cand.best_tau > 0) candidates.push_back(cand);
    }
  }
  if (max_events >= 2) {
    for (int t1 = 1; t1 <= tau_cap - 2; ++t1) {
      for (int t2 = t1 + 1; t2 <= tau_cap - 1; ++t2) {
        for (double q1 : options.intensities) {
          for (double q2 : options.intensities) {
            SweepCandidate cand;
            cand.schedule.ages[0] = t1;
            cand.schedule.ages[1] = t2;
            cand.schedule.fractions[0] = q1;
            cand.schedule.fractions[1] = q2;
            cand.schedule.count = 2;
            sweep_schedule(pts, econ, response, objective, cand, evaluated);
            if (cand.best_tau > 0) candidates.push_back(cand);
          }
        }
      }
    }
  }
  if (candidates.empty()) {
    throw DomainError("no feasible thinning schedule inside the search grid");
  }

  const std::size_t keep =
      std::min<std::size_t>(candidates.size(),
                            options.refine_top > 0 ? static_cast<std::size_t>(options.refine_top) : 1);
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(keep),
                    candidates.end(), [](const SweepCandidate& a, const SweepCandidate& b) {
                      return a.objective > b.objective;
                    });

  bool have_best = false;
  ManagementPlan best_plan;
  double best_obj = -std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < keep; ++c) {
    const SweepCandidate& cand = candidates[c];
    const double floor_tau = static_cast<double>(cand.schedule.ages[cand.schedule.count - 1] + 1);
    auto objfn = [&](double tau) {
      ++evaluated;
      return evaluator.objective(materialize(cand, response, tau), objective);
    };
    const detail::ScanResult refined = detail::maximize_over_rotation(
        objfn, floor_tau, options.tau_max,
        1.0, options.refine_tolerance, options.tie_tolerance);
    ManagementPlan plan = materialize(cand, response, refined.argmax);
    const bool better =
        refined.value > best_obj + options.tie_tolerance ||
        (have_best && std::abs(refined.value - best_obj) <= options.tie_tolerance &&
         prefer_on_tie(plan, refined.argmax, best_plan, best_plan.rotation));
    if (!have_best || better) {
      have_best = true;
      best_obj = refined.value;
      best_plan = plan;
    }
  }

  ThinningSearchResult result;
  result.best_plan = best_plan;
  result.best_report = evaluator.report(best_plan);
  result.best_objective = best_obj;
  RotationSearchOptions bench;
  bench.sample_step = options.sample_step;
  bench.refine_tolerance = options.refine_tolerance;
  bench.tie_tolerance = options.tie_tolerance;
  result.no_thinning = optimize_rotation(params, econ, objective, bench);
  result.thinning_beneficial =
      best_obj > result.no_thinning.objective_value + options.tie_tolerance;
  result.plans_evaluated = evaluated;
  return result;
}

}  // namespace rotecon
