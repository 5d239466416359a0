#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "rotecon/errors.hpp"

namespace rotecon {

// Saturating yield curve: standing merchantable volume (MBF/acre) at stand
// age t is asymptote * (1 - exp(-rate * t))^shape.
struct YieldParams {
  double asymptote = 0.0;  // MBF/acre, > 0
  double rate = 0.0;       // 1/yr, > 0
  double shape = 0.0;      // dimensionless, > 0
  std::string label;       // free-form site tag, e.g. "high" or "low"

  void validate() const;  // throws ValidationError
};

enum class ThinningModel {
  Constant,  // growth correction fixed from the thinning onward
  Decaying,  // removal scar fades at a fixed exponential rate
};

// How the stand responds to a partial harvest.
//   Constant: volume factor (1 - q) * (1 + q * boost) from the event onward,
//             q = removed / standing at the event.
//   Decaying: volume factor 1 - q * exp(-decay_rate * elapsed).
struct ThinningResponse {
  ThinningModel model = ThinningModel::Constant;
  double boost = 0.0;       // >= 0, Constant only
  double decay_rate = 0.0;  // > 0, Decaying only

  void validate() const;
};

// One partial harvest: `removed` MBF/acre taken at stand age `age`.
struct ThinningEvent {
  double age = 0.0;      // years, strictly inside (0, rotation)
  double removed = 0.0;  // MBF/acre, > 0
};

// A full prescription: clearcut age plus zero or more thinnings.
struct ManagementPlan {
  double rotation = 0.0;                // years, > 0
  std::vector<ThinningEvent> thinnings; // strictly increasing ages
  ThinningResponse response;

  void validate() const;
};

// A thinning resolved against the trajectory it belongs to. `standing_before`
// is the corrected volume the instant before the removal; `intensity` is
// removed / standing_before, always in (0, 1].
struct ResolvedThinning {
  double age = 0.0;
  double removed = 0.0;
  double standing_before = 0.0;
  double intensity = 0.0;
  std::size_t sample_index = 0;  // position of the event sample
};

struct TrajectorySample {
  double age = 0.0;
  double volume = 0.0;
};

// Sampled volume path of one rotation under a plan. Samples sit on the
// regular age grid plus every thinning age plus the rotation age; the sample
// at a thinning age holds the post-removal volume, and it is lower than the
// pre-removal volume by exactly the recorded removal.
struct VolumeTrajectory {
  YieldParams params;
  ThinningResponse response;
  double rotation = 0.0;
  std::vector<ResolvedThinning> thinnings;
  std::vector<TrajectorySample> samples;

  // Corrected volume at any age in [0, rotation]; post-removal at event ages.
  double volume_at(double age) const;
  // Same, but pre-removal at event ages.
  double volume_before(double age) const;
  // Right-limit of the corrected growth rate (MBF/acre/yr). Returns +infinity
  // at age 0 when shape < 1.
  double growth_rate_at(double age) const;
};

// Unthinned volume at `age`. Throws DomainError on negative age or
// nonpositive parameters.
double volume(const YieldParams& params, double age);

// Instantaneous unthinned growth rate dV/dt. Returns +infinity at age 0 when
// shape < 1 (the curve leaves the origin vertically).
double volume_derivative(const YieldParams& params, double age);

// Volume the thinned stand would carry, under the constant-response model,
// at any age past the event. `pre_volume_next` is the unthinned (or
// previously corrected) volume at the queried age, `pre_volume_now` the
// standing volume just before the removal. Throws InfeasibleThinningError
// when removed exceeds the standing volume, DomainError on a nonpositive
// standing volume, removal, or negative boost.
double apply_thinning_constant(double pre_volume_next, double pre_volume_now,
                               double removed, double boost);

// Decaying-response counterpart: the removal scar shrinks by
// exp(-decay_rate * elapsed). `elapsed` is time since the thinning, >= 0.
double apply_thinning_decaying(double pre_volume_next, double pre_volume_at_thinning,
                               double removed, double decay_rate, double elapsed);

// Builds the sampled trajectory for a plan. `step` is the sampling interval
// in years (> 0); thinning and rotation ages are always sampled exactly.
// Thinnings are resolved in order, so a removal that exceeds the corrected
// standing volume of its own event throws InfeasibleThinningError.
VolumeTrajectory build_trajectory(const YieldParams& params, const ManagementPlan& plan,
                                  double step = 0.1);

namespace detail {

// Trajectory builder with a pluggable unthinned-volume source, so callers
// that precompute volume on the sampling grid share the exact code path
// (and therefore bit-identical samples) with build_trajectory.
VolumeTrajectory build_trajectory_with(const YieldParams& params, const ManagementPlan& plan,
                                       double step,
                                       const std::function<double(double)>& unthinned);

}  // namespace detail

}  // namespace rotecon
