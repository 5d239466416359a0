#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "rotecon/growth.hpp"

using namespace rotecon;

namespace {

YieldParams ref_params() { return {100.0, 0.05, 2.0, "ref"}; }
YieldParams high_params() { return {100.0, 0.016, 1.7, "high"}; }

}  // namespace

TEST_CASE("volume matches the reference value and its limits") {
  const YieldParams p = ref_params();
  CHECK(volume(p, 20.0) == doctest::Approx(oracle::kVolumeRef).epsilon(1e-14));
  CHECK(volume(p, 0.0) == 0.0);
  CHECK(volume(p, 1e4) == doctest::Approx(p.asymptote).epsilon(1e-12));
}

TEST_CASE("volume grows monotonically and stays below the asymptote") {
  const YieldParams p = high_params();
  double prev = volume(p, 0.0);
  for (int i = 1; i <= 400; ++i) {
    const double v = volume(p, i * 0.5);
    CHECK(v > prev);
    CHECK(v < p.asymptote);
    prev = v;
  }
}

TEST_CASE("volume rejects bad input") {
  CHECK_THROWS_AS(volume(ref_params(), -0.1), DomainError);
  CHECK_THROWS_AS(volume({0.0, 0.05, 2.0, ""}, 1.0), DomainError);
  CHECK_THROWS_AS(volume({100.0, -0.05, 2.0, ""}, 1.0), DomainError);
  CHECK_THROWS_AS(volume({100.0, 0.05, 0.0, ""}, 1.0), DomainError);
}

TEST_CASE("volume_derivative matches the reference value") {
  CHECK(volume_derivative(ref_params(), 20.0) ==
        doctest::Approx(oracle::kDerivativeRef).epsilon(1e-14));
}

TEST_CASE("volume_derivative start-of-life behavior depends on the shape") {
  YieldParams p = ref_params();
  p.shape = 0.7;
  CHECK(std::isinf(volume_derivative(p, 0.0)));
  CHECK(volume_derivative(p, 0.0) > 0.0);
  p.shape = 1.0;
  CHECK(volume_derivative(p, 0.0) ==
        doctest::Approx(p.asymptote * p.rate).epsilon(1e-14));
  p.shape = 1.5;
  CHECK(volume_derivative(p, 0.0) == 0.0);
}

TEST_CASE("apply_thinning_constant reproduces the worked example") {
  CHECK(apply_thinning_constant(50.0, 50.0, 15.0, 0.9) ==
        doctest::Approx(oracle::kConstantThinRef).epsilon(1e-14));
}

TEST_CASE("apply_thinning_constant limits and errors") {
  // vanishing removal leaves the curve untouched
  CHECK(apply_thinning_constant(50.0, 50.0, 1e-13, 0.4) ==
        doctest::Approx(50.0).epsilon(1e-12));
  // taking everything leaves nothing, whatever the boost
  CHECK(apply_thinning_constant(80.0, 50.0, 50.0, 0.9) == 0.0);
  // a hair over the standing volume is still clamped, not rejected
  CHECK(apply_thinning_constant(80.0, 50.0, 50.0 * (1.0 + 0.5e-12), 0.9) == 0.0);

  CHECK_THROWS_AS(apply_thinning_constant(80.0, 50.0, 50.1, 0.9),
                  InfeasibleThinningError);
  CHECK_THROWS_AS(apply_thinning_constant(80.0, 0.0, 1.0, 0.9), DomainError);
  CHECK_THROWS_AS(apply_thinning_constant(80.0, 50.0, 0.0, 0.9), DomainError);
  CHECK_THROWS_AS(apply_thinning_constant(80.0, 50.0, 5.0, -0.1), DomainError);
}

TEST_CASE("apply_thinning_decaying reproduces the worked factor") {
  // intensity 0.3 of 50, decay 0.5, elapsed 2
  CHECK(apply_thinning_decaying(50.0, 50.0, 15.0, 0.5, 2.0) ==
        doctest::Approx(50.0 * oracle::kDecayingFactorRef).epsilon(1e-14));
}

TEST_CASE("apply_thinning_decaying limits and errors") {
  // at the instant the factor is 1 - intensity
  CHECK(apply_thinning_decaying(50.0, 50.0, 15.0, 0.5, 0.0) ==
        doctest::Approx(35.0).epsilon(1e-14));
  // the scar fades away
  CHECK(apply_thinning_decaying(50.0, 50.0, 15.0, 0.5, 200.0) ==
        doctest::Approx(50.0).epsilon(1e-12));

  CHECK_THROWS_AS(apply_thinning_decaying(50.0, 50.0, 51.0, 0.5, 1.0),
                  InfeasibleThinningError);
  CHECK_THROWS_AS(apply_thinning_decaying(50.0, 50.0, 15.0, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(apply_thinning_decaying(50.0, 50.0, 15.0, 0.5, -1.0), DomainError);
}

TEST_CASE("infeasible removals carry their context") {
  try {
    apply_thinning_constant(80.0, 50.0, 60.0, 0.2);
    FAIL("expected InfeasibleThinningError");
  } catch (const InfeasibleThinningError& e) {
    CHECK(e.removed() == 60.0);
    CHECK(e.standing() == 50.0);
    CHECK(std::isnan(e.age()));
  }
}

TEST_CASE("thinning-free trajectory samples the raw curve exactly") {
  const YieldParams p = high_params();
  ManagementPlan plan;
  plan.rotation = 25.0;
  const VolumeTrajectory traj = build_trajectory(p, plan, 0.1);

  CHECK(traj.samples.front().age == 0.0);
  CHECK(traj.samples.front().volume == 0.0);
  CHECK(traj.samples.back().age == 25.0);
  for (const TrajectorySample& s : traj.samples) {
    CHECK(s.volume == volume(p, s.age));  // bit-identical, no correction applies
  }
  double prev = -1.0;
  for (const TrajectorySample& s : traj.samples) {
    CHECK(s.age > prev);
    prev = s.age;
  }
  CHECK(traj.growth_rate_at(10.0) == volume_derivative(p, 10.0));
}

TEST_CASE("event samples drop by exactly the recorded removal") {
  const YieldParams p = high_params();
  ManagementPlan plan;
  plan.rotation = 30.0;
  plan.thinnings = {{15.0, 2.0}};
  plan.response = {ThinningModel::Constant, 0.35, 0.0};
  const VolumeTrajectory traj = build_trajectory(p, plan, 0.1);

  REQUIRE(traj.thinnings.size() == 1);
  const ResolvedThinning& ev = traj.thinnings[0];
  CHECK(ev.standing_before ==
        doctest::Approx(oracle::kCaseAStandingRef).epsilon(1e-13));
  CHECK(ev.intensity == doctest::Approx(oracle::kCaseAIntensityRef).epsilon(1e-13));
  CHECK(traj.samples[ev.sample_index].age == 15.0);
  CHECK(traj.samples[ev.sample_index].volume == ev.standing_before - ev.removed);
  CHECK(traj.volume_before(15.0) - traj.volume_at(15.0) == ev.removed);

  // past the event the constant factor governs
  CHECK(traj.volume_at(30.0) ==
        doctest::Approx(oracle::kCaseATerminalRef).epsilon(1e-13));
  // the boost materializes right after the instant
  CHECK(traj.volume_at(15.1) > traj.volume_at(15.0));
  CHECK(volume(p, 15.0) * oracle::kCaseAFactorRef ==
        doctest::Approx(oracle::kCaseAPostInstantRef).epsilon(1e-13));
}

TEST_CASE("two constant-response thinnings compose") {
  const YieldParams p = high_params();
  ManagementPlan plan;
  plan.rotation = 35.0;
  plan.thinnings = {{10.0, 1.0}, {20.0, 2.0}};
  plan.response = {ThinningModel::Constant, 0.2, 0.0};
  const VolumeTrajectory traj = build_trajectory(p, plan, 0.1);

  REQUIRE(traj.thinnings.size() == 2);
  CHECK(traj.thinnings[0].standing_before ==
        doctest::Approx(oracle::kCaseCStandingARef).epsilon(1e-13));
  CHECK(traj.thinnings[1].standing_before ==
        doctest::Approx(oracle::kCaseCStandingBRef).epsilon(1e-13));
  CHECK(traj.thinnings[0].intensity ==
        doctest::Approx(oracle::kCaseCIntensityARef).epsilon(1e-13));
  CHECK(traj.thinnings[1].intensity ==
        doctest::Approx(oracle::kCaseCIntensityBRef).epsilon(1e-13));
  CHECK(traj.volume_at(12.0) ==
        doctest::Approx(oracle::kCaseCVolumeAt12Ref).epsilon(1e-13));
  CHECK(traj.volume_at(35.0) ==
        doctest::Approx(oracle::kCaseCTerminalRef).epsilon(1e-13));
  CHECK(traj.growth_rate_at(12.0) ==
        doctest::Approx(oracle::kCaseCGrowthAt12Ref).epsilon(1e-13));
}

TEST_CASE("decaying response heals the removal scar") {
  const YieldParams p = high_params();
  ManagementPlan plan;
  plan.rotation = 30.0;
  plan.thinnings = {{15.0, 2.0}};
  plan.response = {ThinningModel::Decaying, 0.0, 0.3};
  const VolumeTrajectory traj = build_trajectory(p, plan, 0.1);

  CHECK(traj.volume_at(20.0) ==
        doctest::Approx(oracle::kCaseBVolumeAt20Ref).epsilon(1e-13));
  CHECK(traj.volume_at(30.0) ==
        doctest::Approx(oracle::kCaseBTerminalRef).epsilon(1e-13));
  CHECK(traj.growth_rate_at(20.0) ==
        doctest::Approx(oracle::kCaseBGrowthAt20Ref).epsilon(1e-13));
  // scar decays: corrected volume approaches the unthinned curve
  const double gap20 = volume(p, 20.0) - traj.volume_at(20.0);
  const double gap29 = volume(p, 29.0) - traj.volume_at(29.0);
  CHECK(gap29 < gap20);
  CHECK(gap29 > 0.0);
}

TEST_CASE("removing the whole stand is allowed at the boundary") {
  const YieldParams p = high_params();
  const double standing = volume(p, 15.0);
  ManagementPlan plan;
  plan.rotation = 30.0;
  plan.thinnings = {{15.0, standing}};

  SUBCASE("constant response never regrows") {
    plan.response = {ThinningModel::Constant, 0.5, 0.0};
    const VolumeTrajectory traj = build_trajectory(p, plan, 0.1);
    CHECK(traj.volume_at(15.0) == 0.0);
    CHECK(traj.volume_at(20.0) == 0.0);
    CHECK(traj.growth_rate_at(20.0) == 0.0);
  }
  SUBCASE("decaying response recovers") {
    plan.response = {ThinningModel::Decaying, 0.0, 0.3};
    const VolumeTrajectory traj = build_trajectory(p, plan, 0.1);
    CHECK(traj.volume_at(15.0) == 0.0);
    CHECK(traj.volume_at(20.0) > 0.0);
  }
}

TEST_CASE("trajectory rejects invalid plans") {
  const YieldParams p = high_params();
  ManagementPlan plan;
  plan.rotation = 30.0;

  SUBCASE("nonpositive rotation") {
    plan.rotation = 0.0;
    CHECK_THROWS_AS(build_trajectory(p, plan), ValidationError);
  }
  SUBCASE("nonpositive step") {
    CHECK_THROWS_AS(build_trajectory(p, plan, 0.0), DomainError);
  }
  SUBCASE("thinning at establishment") {
    plan.thinnings = {{0.0, 1.0}};
    CHECK_THROWS_AS(build_trajectory(p, plan), ValidationError);
  }
  SUBCASE("thinning at the clearcut") {
    plan.thinnings = {{30.0, 1.0}};
    CHECK_THROWS_AS(build_trajectory(p, plan), ValidationError);
  }
  SUBCASE("ages out of order") {
    plan.thinnings = {{20.0, 1.0}, {10.0, 1.0}};
    CHECK_THROWS_AS(build_trajectory(p, plan), ValidationError);
  }
  SUBCASE("nonpositive removal") {
    plan.thinnings = {{10.0, 0.0}};
    CHECK_THROWS_AS(build_trajectory(p, plan), ValidationError);
  }
  SUBCASE("negative boost") {
    plan.response = {ThinningModel::Constant, -0.2, 0.0};
    CHECK_THROWS_AS(build_trajectory(p, plan), ValidationError);
  }
  SUBCASE("nonpositive decay rate") {
    plan.response = {ThinningModel::Decaying, 0.0, 0.0};
    CHECK_THROWS_AS(build_trajectory(p, plan), ValidationError);
  }
  SUBCASE("removal beyond the standing volume") {
    plan.thinnings = {{15.0, 100.0}};
    try {
      build_trajectory(p, plan);
      FAIL("expected InfeasibleThinningError");
    } catch (const InfeasibleThinningError& e) {
      CHECK(e.age() == 15.0);
      CHECK(e.removed() == 100.0);
      CHECK(e.standing() == doctest::Approx(oracle::kCaseAStandingRef).epsilon(1e-12));
    }
  }
  SUBCASE("second removal infeasible after the first") {
    // the first thinning leaves too little for the second
    const double s = volume(p, 15.0);
    plan.thinnings = {{15.0, 0.9 * s}, {16.0, s}};
    CHECK_THROWS_AS(build_trajectory(p, plan), InfeasibleThinningError);
  }
}

TEST_CASE("trajectory queries reject ages outside the rotation") {
  ManagementPlan plan;
  plan.rotation = 10.0;
  const VolumeTrajectory traj = build_trajectory(high_params(), plan, 0.1);
  CHECK_THROWS_AS(traj.volume_at(-0.5), DomainError);
  CHECK_THROWS_AS(traj.volume_at(10.5), DomainError);
  CHECK_THROWS_AS(traj.growth_rate_at(11.0), DomainError);
}

TEST_CASE("a coarse step still samples events and the clearcut exactly") {
  const YieldParams p = high_params();
  ManagementPlan plan;
  plan.rotation = 30.5;
  plan.thinnings = {{15.25, 1.0}};
  plan.response = {ThinningModel::Constant, 0.0, 0.0};
  const VolumeTrajectory traj = build_trajectory(p, plan, 7.0);

  bool saw_event = false;
  bool saw_end = false;
  for (const TrajectorySample& s : traj.samples) {
    saw_event |= s.age == 15.25;
    saw_end |= s.age == 30.5;
  }
  CHECK(saw_event);
  CHECK(saw_end);
}
