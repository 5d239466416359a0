#include "rotecon/accounting.hpp"

#include <cmath>

namespace rotecon {

void EconParams::validate() const {
  if (!(stumpage_price > 0.0)) throw ValidationError("stumpage price must be positive");
  if (!(establishment_cost >= 0.0)) {
    throw ValidationError("establishment cost must be nonnegative");
  }
  if (!(bare_land_value >= 0.0)) throw ValidationError("bare land value must be nonnegative");
  if (!(annual_overhead >= 0.0)) throw ValidationError("annual overhead must be nonnegative");
}

double capitalization(const VolumeTrajectory& traj, const EconParams& econ, double age) {
  return econ.bare_land_value + econ.stumpage_price * traj.volume_at(age);
}

double operating_profit_rate(const VolumeTrajectory& traj, const EconParams& econ, double age) {
  return econ.stumpage_price * traj.growth_rate_at(age) - econ.annual_overhead;
}

namespace {

struct RotationIntegrals {
  double profit = 0.0;  // exact integral of the accrual rate over [0, rotation]
  double cap = 0.0;     // trapezoid integral of capitalization
};

// Segment right endpoints use the pre-removal volume, so growth accrued up to
// a thinning is booked in full and the removal itself never enters the
// integral: the profit integral telescopes to
//   price * (terminal pre-harvest volume + removals) - overhead * rotation.
RotationIntegrals integrate(const VolumeTrajectory& traj, const EconParams& econ) {
  RotationIntegrals out;
  const double price = econ.stumpage_price;
  const double blv = econ.bare_land_value;
  std::size_t next_event = 0;
  for (std::size_t i = 0; i + 1 < traj.samples.size(); ++i) {
    const TrajectorySample& l = traj.samples[i];
    const TrajectorySample& r = traj.samples[i + 1];
    while (next_event < traj.thinnings.size() &&
           traj.thinnings[next_event].sample_index <= i) {
      ++next_event;
    }
    double vr = r.volume;
    if (next_event < traj.thinnings.size() &&
        traj.thinnings[next_event].sample_index == i + 1) {
      vr = traj.thinnings[next_event].standing_before;
    }
    out.profit += price * (vr - l.volume);
    out.cap += 0.5 * ((blv + price * l.volume) + (blv + price * vr)) * (r.age - l.age);
  }
  out.profit -= econ.annual_overhead * traj.rotation;
  return out;
}

}  // namespace

AccrualLedger build_ledger(const VolumeTrajectory& traj, const EconParams& econ) {
  econ.validate();
  AccrualLedger ledger;
  ledger.samples.reserve(traj.samples.size());
  for (const TrajectorySample& s : traj.samples) {
    LedgerSample ls;
    ls.age = s.age;
    ls.capitalization = econ.bare_land_value + econ.stumpage_price * s.volume;
    ls.profit_density = operating_profit_rate(traj, econ, s.age);
    ledger.samples.push_back(ls);
  }
  ledger.impulses.push_back({0.0, -econ.establishment_cost});
  const RotationIntegrals ri = integrate(traj, econ);
  ledger.integrated_profit = ri.profit;
  ledger.impulse_total = -econ.establishment_cost;
  return ledger;
}

RotationReport expected_rates(const VolumeTrajectory& traj, const EconParams& econ) {
  econ.validate();
  const RotationIntegrals ri = integrate(traj, econ);
  RotationReport report;
  report.rotation = traj.rotation;
  report.expected_profit_rate =
      (ri.profit - econ.establishment_cost) / traj.rotation;
  report.expected_capitalization = ri.cap / traj.rotation;
  if (!(report.expected_capitalization > 0.0)) {
    throw DomainError("expected capitalization is zero; return rate undefined");
  }
  report.expected_return_rate = report.expected_profit_rate / report.expected_capitalization;
  // No thinning may sit at the rotation age, so the last sample is the
  // pre-harvest standing volume.
  report.terminal_volume = traj.samples.empty() ? 0.0 : traj.samples.back().volume;
  for (const ResolvedThinning& ev : traj.thinnings) report.thinned_volume += ev.removed;
  return report;
}

double break_even_rotation(const YieldParams& params, const EconParams& econ) {
  params.validate();
  econ.validate();
  // Thinning-free rotation profit, exact:
  //   N(tau) = price * V(tau) - overhead * tau - establishment.
  // The expected profit rate is N(tau) / tau, so the break-even root is the
  // first sign change of N.
  auto net = [&](double tau) {
    return econ.stumpage_price * volume(params, tau) - econ.annual_overhead * tau -
           econ.establishment_cost;
  };
  const double horizon = 500.0;
  const double scan = 0.1;
  if (net(1e-3) >= 0.0) return 0.0;  // profitable from the outset
  double lo = 1e-3;
  double hi = lo;
  bool bracketed = false;
  for (double t = scan; t <= horizon; t += scan) {
    if (net(t) >= 0.0) {
      hi = t;
      bracketed = true;
      break;
    }
    lo = t;
  }
  if (!bracketed) {
    throw NoBreakEvenError("expected profit rate stays negative out to 500 years");
  }
  while (hi - lo > 1e-6 * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    if (net(mid) >= 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace rotecon
