#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "rotecon/accounting.hpp"

using namespace rotecon;

namespace {

YieldParams high_params() { return {100.0, 0.016, 1.7, "high"}; }
EconParams thinning_econ() { return {600.0, 1200.0, 1200.0, 10.0}; }

VolumeTrajectory case_a() {
  ManagementPlan plan;
  plan.rotation = 30.0;
  plan.thinnings = {{15.0, 2.0}};
  plan.response = {ThinningModel::Constant, 0.35, 0.0};
  return build_trajectory(high_params(), plan, 0.1);
}

VolumeTrajectory case_b() {
  ManagementPlan plan;
  plan.rotation = 30.0;
  plan.thinnings = {{15.0, 2.0}};
  plan.response = {ThinningModel::Decaying, 0.0, 0.3};
  return build_trajectory(high_params(), plan, 0.1);
}

VolumeTrajectory case_c() {
  ManagementPlan plan;
  plan.rotation = 35.0;
  plan.thinnings = {{10.0, 1.0}, {20.0, 2.0}};
  plan.response = {ThinningModel::Constant, 0.2, 0.0};
  return build_trajectory(high_params(), plan, 0.1);
}

// Total rotation profit from first principles: everything ever sold plus the
// terminal stand, minus what was spent.
double direct_profit(const VolumeTrajectory& traj, const EconParams& econ) {
  double removed = 0.0;
  for (const ResolvedThinning& ev : traj.thinnings) removed += ev.removed;
  return econ.stumpage_price * (traj.samples.back().volume + removed) -
         econ.annual_overhead * traj.rotation - econ.establishment_cost;
}

}  // namespace

TEST_CASE("capitalization is land plus standing stumpage value") {
  const VolumeTrajectory traj = case_a();
  const EconParams econ = thinning_econ();
  CHECK(capitalization(traj, econ, 0.0) == 1200.0);
  CHECK(capitalization(traj, econ, 10.0) ==
        doctest::Approx(1200.0 + 600.0 * traj.volume_at(10.0)).epsilon(1e-14));
  // post-removal at the event age
  CHECK(capitalization(traj, econ, 15.0) ==
        doctest::Approx(1200.0 + 600.0 * (oracle::kCaseAStandingRef - 2.0))
            .epsilon(1e-13));
  CHECK_THROWS_AS(capitalization(traj, econ, 31.0), DomainError);
}

TEST_CASE("operating profit rate picks up the corrected growth") {
  const VolumeTrajectory traj = case_b();
  const EconParams econ = thinning_econ();
  CHECK(operating_profit_rate(traj, econ, 20.0) ==
        doctest::Approx(600.0 * oracle::kCaseBGrowthAt20Ref - 10.0).epsilon(1e-12));
  CHECK_THROWS_AS(operating_profit_rate(traj, econ, -1.0), DomainError);
}

TEST_CASE("ledger integral telescopes to the direct rotation profit") {
  const EconParams econ = thinning_econ();
  for (const VolumeTrajectory& traj : {case_a(), case_b(), case_c()}) {
    const AccrualLedger ledger = build_ledger(traj, econ);
    const double direct = direct_profit(traj, econ);
    CHECK(ledger.integrated_profit + ledger.impulse_total ==
          doctest::Approx(direct).epsilon(1e-12));
    CHECK(ledger.impulse_total == -econ.establishment_cost);
    REQUIRE(ledger.impulses.size() == 1);
    CHECK(ledger.impulses[0].age == 0.0);
    CHECK(ledger.impulses[0].amount == -econ.establishment_cost);
    CHECK(ledger.samples.size() == traj.samples.size());
    for (const LedgerSample& s : ledger.samples) {
      CHECK(s.capitalization >= econ.bare_land_value);
    }
  }
}

TEST_CASE("expected rates match the independent continuum reference") {
  const EconParams econ = thinning_econ();

  SUBCASE("constant response") {
    const RotationReport rep = expected_rates(case_a(), econ);
    CHECK(rep.expected_profit_rate ==
          doctest::Approx(oracle::kCaseAProfitRateRef).epsilon(1e-10));
    CHECK(rep.expected_capitalization ==
          doctest::Approx(oracle::kCaseACapitalizationRef).epsilon(1e-4));
    CHECK(rep.expected_return_rate ==
          doctest::Approx(oracle::kCaseAReturnRef).epsilon(1e-4));
    CHECK(rep.terminal_volume ==
          doctest::Approx(oracle::kCaseATerminalRef).epsilon(1e-13));
    CHECK(rep.thinned_volume == 2.0);
  }
  SUBCASE("decaying response") {
    const RotationReport rep = expected_rates(case_b(), econ);
    CHECK(rep.expected_profit_rate ==
          doctest::Approx(oracle::kCaseBProfitRateRef).epsilon(1e-10));
    CHECK(rep.expected_capitalization ==
          doctest::Approx(oracle::kCaseBCapitalizationRef).epsilon(1e-4));
    CHECK(rep.expected_return_rate ==
          doctest::Approx(oracle::kCaseBReturnRef).epsilon(1e-4));
  }
  SUBCASE("two thinnings") {
    const RotationReport rep = expected_rates(case_c(), econ);
    CHECK(rep.expected_profit_rate ==
          doctest::Approx(oracle::kCaseCProfitRateRef).epsilon(1e-10));
    CHECK(rep.expected_capitalization ==
          doctest::Approx(oracle::kCaseCCapitalizationRef).epsilon(1e-4));
    CHECK(rep.expected_return_rate ==
          doctest::Approx(oracle::kCaseCReturnRef).epsilon(1e-4));
    CHECK(rep.thinned_volume == doctest::Approx(3.0).epsilon(1e-14));
  }
  SUBCASE("thinning-free calibration point") {
    ManagementPlan plan;
    plan.rotation = oracle::kHighReturnOptTauRef;
    const EconParams calib{600.0, 1200.0, 1200.0, 0.0};
    const RotationReport rep =
        expected_rates(build_trajectory(high_params(), plan, 0.1), calib);
    CHECK(rep.expected_return_rate ==
          doctest::Approx(oracle::kHighReturnOptRef).epsilon(1e-4));
    CHECK(rep.expected_profit_rate ==
          doctest::Approx(oracle::kHighOptProfitRateRef).epsilon(1e-10));
    CHECK(rep.expected_capitalization ==
          doctest::Approx(oracle::kHighOptCapitalizationRef).epsilon(1e-4));
    CHECK(rep.terminal_volume ==
          doctest::Approx(oracle::kHighOptTerminalVolRef).epsilon(1e-12));
  }
}

TEST_CASE("capitalization quadrature is an exact trapezoid on the sample grid") {
  // Two segments only, so the expectation can be written out by hand.
  const YieldParams p = high_params();
  ManagementPlan plan;
  plan.rotation = 0.2;
  const VolumeTrajectory traj = build_trajectory(p, plan, 0.1);
  REQUIRE(traj.samples.size() == 3);

  const EconParams econ{600.0, 0.0, 1200.0, 0.0};
  auto K = [&](double age) { return 1200.0 + 600.0 * volume(p, age); };
  const double seg0 = 0.5 * (K(traj.samples[0].age) + K(traj.samples[1].age)) *
                      (traj.samples[1].age - traj.samples[0].age);
  const double seg1 = 0.5 * (K(traj.samples[1].age) + K(traj.samples[2].age)) *
                      (traj.samples[2].age - traj.samples[1].age);
  const RotationReport rep = expected_rates(traj, econ);
  CHECK(rep.expected_capitalization ==
        doctest::Approx((seg0 + seg1) / 0.2).epsilon(1e-15));
}

TEST_CASE("break-even rotation hits the calibrated values") {
  const EconParams calib{600.0, 1200.0, 1200.0, 0.0};
  CHECK(break_even_rotation(high_params(), calib) ==
        doctest::Approx(oracle::kHighBreakEvenRef).epsilon(2e-5));
  CHECK(break_even_rotation({100.0, 0.016, 2.2, "low"}, calib) ==
        doctest::Approx(oracle::kLowBreakEvenRef).epsilon(2e-5));
}

TEST_CASE("break-even edge cases") {
  SUBCASE("free establishment pays back immediately") {
    const EconParams econ{600.0, 0.0, 1200.0, 0.0};
    CHECK(break_even_rotation(high_params(), econ) == 0.0);
  }
  SUBCASE("expenses the stand can never cover") {
    // the asymptotic stand is worth 100 but costs 1e6 to establish
    const EconParams econ{1.0, 1e6, 0.0, 0.0};
    CHECK_THROWS_AS(break_even_rotation(high_params(), econ), NoBreakEvenError);
  }
  SUBCASE("overhead outruns growth") {
    const EconParams econ{1.0, 0.0, 0.0, 100.0};
    CHECK_THROWS_AS(break_even_rotation(high_params(), econ), NoBreakEvenError);
  }
}

TEST_CASE("econ validation rejects bad values") {
  EconParams econ{600.0, 1200.0, 1200.0, 0.0};
  econ.stumpage_price = 0.0;
  CHECK_THROWS_AS(econ.validate(), ValidationError);
  econ = {600.0, -1.0, 1200.0, 0.0};
  CHECK_THROWS_AS(econ.validate(), ValidationError);
  econ = {600.0, 1200.0, -1.0, 0.0};
  CHECK_THROWS_AS(econ.validate(), ValidationError);
  econ = {600.0, 1200.0, 1200.0, -1.0};
  CHECK_THROWS_AS(econ.validate(), ValidationError);
}
