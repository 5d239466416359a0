#include "rotecon/growth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace rotecon {

namespace {

// Relative slack when comparing a removal against the standing volume, so a
// removal computed as intensity * standing stays feasible after rounding.
constexpr double kFeasibilityTol = 1e-12;

// Ages closer than this (relative) are treated as the same grid node.
constexpr double kAgeTol = 1e-12;

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

double removal_fraction(double removed, double standing) {
  if (!(standing > 0.0)) {
    throw DomainError("standing volume must be positive at a thinning, got " +
                      format_double(standing));
  }
  if (!(removed > 0.0)) {
    throw DomainError("thinning removal must be positive, got " + format_double(removed));
  }
  if (removed > standing * (1.0 + kFeasibilityTol)) {
    throw InfeasibleThinningError(std::numeric_limits<double>::quiet_NaN(), removed, standing);
  }
  return std::min(removed / standing, 1.0);
}

}  // namespace

InfeasibleThinningError::InfeasibleThinningError(double age, double removed, double standing)
    : Error([&] {
        std::ostringstream os;
        os.precision(17);
        os << "thinning removes " << removed << " MBF/acre but only " << standing
           << " is standing";
        if (!std::isnan(age)) os << " at age " << age;
        return os.str();
      }()),
      age_(age),
      removed_(removed),
      standing_(standing) {}

void YieldParams::validate() const {
  if (!(asymptote > 0.0)) throw ValidationError("yield asymptote must be positive");
  if (!(rate > 0.0)) throw ValidationError("yield rate must be positive");
  if (!(shape > 0.0)) throw ValidationError("yield shape must be positive");
}

void ThinningResponse::validate() const {
  switch (model) {
    case ThinningModel::Constant:
      if (!(boost >= 0.0)) throw ValidationError("thinning boost must be nonnegative");
      break;
    case ThinningModel::Decaying:
      if (!(decay_rate > 0.0)) throw ValidationError("thinning decay rate must be positive");
      break;
  }
}

void ManagementPlan::validate() const {
  if (!(rotation > 0.0)) throw ValidationError("rotation age must be positive");
  response.validate();
  double prev = 0.0;
  for (std::size_t i = 0; i < thinnings.size(); ++i) {
    const ThinningEvent& ev = thinnings[i];
    if (!(ev.age > 0.0) || !(ev.age < rotation)) {
      throw ValidationError("thinning ages must lie strictly inside (0, rotation)");
    }
    if (i > 0 && !(ev.age > prev)) {
      throw ValidationError("thinning ages must be strictly increasing");
    }
    if (!(ev.removed > 0.0)) {
      throw ValidationError("thinning removals must be positive");
    }
    prev = ev.age;
  }
}

double volume(const YieldParams& params, double age) {
  if (!(params.asymptote > 0.0) || !(params.rate > 0.0) || !(params.shape > 0.0)) {
    throw DomainError("yield parameters must be positive");
  }
  if (!(age >= 0.0)) {
    throw DomainError("stand age must be nonnegative, got " + format_double(age));
  }
  return params.asymptote * std::pow(1.0 - std::exp(-params.rate * age), params.shape);
}

double volume_derivative(const YieldParams& params, double age) {
  if (!(params.asymptote > 0.0) || !(params.rate > 0.0) || !(params.shape > 0.0)) {
    throw DomainError("yield parameters must be positive");
  }
  if (!(age >= 0.0)) {
    throw DomainError("stand age must be nonnegative, got " + format_double(age));
  }
  const double decay = std::exp(-params.rate * age);
  // pow(0, negative) yields +infinity, which is the documented sentinel for
  // shape < 1 at age 0.
  return params.asymptote * params.shape * params.rate * decay *
         std::pow(1.0 - decay, params.shape - 1.0);
}

double apply_thinning_constant(double pre_volume_next, double pre_volume_now, double removed,
                               double boost) {
  if (!(boost >= 0.0)) {
    throw DomainError("thinning boost must be nonnegative, got " + format_double(boost));
  }
  const double q = removal_fraction(removed, pre_volume_now);
  return pre_volume_next * (1.0 - q) * (1.0 + q * boost);
}

double apply_thinning_decaying(double pre_volume_next, double pre_volume_at_thinning,
                               double removed, double decay_rate, double elapsed) {
  if (!(decay_rate > 0.0)) {
    throw DomainError("thinning decay rate must be positive, got " + format_double(decay_rate));
  }
  if (!(elapsed >= 0.0)) {
    throw DomainError("elapsed time since thinning must be nonnegative, got " +
                      format_double(elapsed));
  }
  const double q = removal_fraction(removed, pre_volume_at_thinning);
  return pre_volume_next * (1.0 - q * std::exp(-decay_rate * elapsed));
}

namespace {

// Applies every thinning strictly before `age` to the unthinned volume `v`.
double corrected_before(const VolumeTrajectory& traj, double v, double age) {
  for (const ResolvedThinning& ev : traj.thinnings) {
    if (!(ev.age < age)) break;
    if (traj.response.model == ThinningModel::Constant) {
      v = apply_thinning_constant(v, ev.standing_before, ev.removed, traj.response.boost);
    } else {
      v = apply_thinning_decaying(v, ev.standing_before, ev.removed, traj.response.decay_rate,
                                  age - ev.age);
    }
  }
  return v;
}

void check_query_age(const VolumeTrajectory& traj, double age) {
  if (!(age >= 0.0) || age > traj.rotation * (1.0 + kAgeTol)) {
    throw DomainError("query age " + format_double(age) + " outside rotation [0, " +
                      format_double(traj.rotation) + "]");
  }
}

}  // namespace

double VolumeTrajectory::volume_at(double age) const {
  check_query_age(*this, age);
  for (const ResolvedThinning& ev : thinnings) {
    if (ev.age == age) return ev.standing_before - ev.removed;
  }
  return corrected_before(*this, volume(params, age), age);
}

double VolumeTrajectory::volume_before(double age) const {
  check_query_age(*this, age);
  for (const ResolvedThinning& ev : thinnings) {
    if (ev.age == age) return ev.standing_before;
  }
  return corrected_before(*this, volume(params, age), age);
}

double VolumeTrajectory::growth_rate_at(double age) const {
  check_query_age(*this, age);
  const double base = volume_derivative(params, age);
  if (response.model == ThinningModel::Constant) {
    double factor = 1.0;
    for (const ResolvedThinning& ev : thinnings) {
      if (ev.age > age) break;  // right-limit: an event at `age` counts
      factor *= (1.0 - ev.intensity) * (1.0 + ev.intensity * response.boost);
    }
    return base * factor;
  }
  // Decaying model: d/dt [V * prod G_i] with G_i = 1 - q_i exp(-d (t - t_i)).
  // Product rule, no logarithmic shortcut, so q = 1 stays finite.
  std::size_t n = 0;
  while (n < thinnings.size() && thinnings[n].age <= age) ++n;
  double prod = 1.0;
  std::vector<double> g(n), gdot(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double scar = thinnings[i].intensity *
                        std::exp(-response.decay_rate * (age - thinnings[i].age));
    g[i] = 1.0 - scar;
    gdot[i] = response.decay_rate * scar;
    prod *= g[i];
  }
  double rate = base * prod;
  const double vol = volume(params, age);
  for (std::size_t i = 0; i < n; ++i) {
    double rest = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) rest *= g[j];
    }
    rate += vol * gdot[i] * rest;
  }
  return rate;
}

namespace detail {

VolumeTrajectory build_trajectory_with(const YieldParams& params, const ManagementPlan& plan,
                                       double step,
                                       const std::function<double(double)>& unthinned) {
  params.validate();
  plan.validate();
  if (!(step > 0.0)) throw DomainError("sampling step must be positive");

  VolumeTrajectory traj;
  traj.params = params;
  traj.response = plan.response;
  traj.rotation = plan.rotation;

  // Regular grid, then the rotation age, then every thinning age exactly.
  std::vector<double> ages;
  ages.reserve(static_cast<std::size_t>(plan.rotation / step) + plan.thinnings.size() + 2);
  const double upper = plan.rotation * (1.0 - kAgeTol);
  for (std::size_t i = 0;; ++i) {
    const double t = static_cast<double>(i) * step;
    if (t >= upper) break;
    ages.push_back(t);
  }
  ages.push_back(plan.rotation);
  for (const ThinningEvent& ev : plan.thinnings) {
    auto pos = std::lower_bound(ages.begin(), ages.end(), ev.age);
    if (pos == ages.end() || *pos != ev.age) ages.insert(pos, ev.age);
  }

  // Resolve thinnings in order against the already-corrected curve.
  traj.thinnings.reserve(plan.thinnings.size());
  for (const ThinningEvent& ev : plan.thinnings) {
    double standing = unthinned(ev.age);
    for (const ResolvedThinning& prior : traj.thinnings) {
      if (traj.response.model == ThinningModel::Constant) {
        standing = apply_thinning_constant(standing, prior.standing_before, prior.removed,
                                           traj.response.boost);
      } else {
        standing = apply_thinning_decaying(standing, prior.standing_before, prior.removed,
                                           traj.response.decay_rate, ev.age - prior.age);
      }
    }
    if (!(standing > 0.0)) {
      throw DomainError("standing volume must be positive at a thinning, got " +
                        format_double(standing));
    }
    if (ev.removed > standing * (1.0 + kFeasibilityTol)) {
      throw InfeasibleThinningError(ev.age, ev.removed, standing);
    }
    ResolvedThinning rt;
    rt.age = ev.age;
    rt.removed = ev.removed;
    rt.standing_before = standing;
    rt.intensity = std::min(ev.removed / standing, 1.0);
    traj.thinnings.push_back(rt);
  }

  traj.samples.reserve(ages.size());
  std::size_t next_event = 0;
  for (double t : ages) {
    TrajectorySample s;
    s.age = t;
    if (next_event < traj.thinnings.size() && traj.thinnings[next_event].age == t) {
      ResolvedThinning& rt = traj.thinnings[next_event];
      rt.sample_index = traj.samples.size();
      s.volume = rt.standing_before - rt.removed;
      ++next_event;
    } else {
      s.volume = corrected_before(traj, unthinned(t), t);
    }
    traj.samples.push_back(s);
  }
  return traj;
}

}  // namespace detail

VolumeTrajectory build_trajectory(const YieldParams& params, const ManagementPlan& plan,
                                  double step) {
  return detail::build_trajectory_with(params, plan, step,
                                       [&](double t) { return volume(params, t); });
}

}  // namespace rotecon
