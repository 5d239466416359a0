#pragma once

#include <vector>

#include "rotecon/growth.hpp"

namespace rotecon {

// Per-acre economics of one rotation. All money is real (uninflated) dollars.
struct EconParams {
  double stumpage_price = 0.0;      // $/MBF, > 0
  double establishment_cost = 0.0;  // $/acre, lump sum at age 0, >= 0
  double bare_land_value = 0.0;     // $/acre, >= 0
  double annual_overhead = 0.0;     // $/acre/yr, >= 0

  void validate() const;
};

// A lump gain or loss booked at one instant (establishment is booked as a
// negative impulse at age 0; harvests are not impulses, they only convert
// standing value into cash).
struct LedgerImpulse {
  double age = 0.0;
  double amount = 0.0;
};

struct LedgerSample {
  double age = 0.0;
  double capitalization = 0.0;  // $/acre tied up at this age
  double profit_density = 0.0;  // $/acre/yr accrual rate (right-limit)
};

// Accrual ledger of one rotation: sampled capitalization and accrual rate,
// plus the lump impulses. `integrated_profit` is the exact integral of the
// accrual rate over the rotation (value differences per segment, so it
// telescopes with no quadrature error); adding `impulse_total` gives total
// rotation profit.
struct AccrualLedger {
  std::vector<LedgerSample> samples;
  std::vector<LedgerImpulse> impulses;
  double integrated_profit = 0.0;
  double impulse_total = 0.0;
};

// Per-rotation expectations under an evaluation date spread uniformly over
// the rotation.
struct RotationReport {
  double rotation = 0.0;
  double expected_profit_rate = 0.0;     // $/acre/yr
  double expected_capitalization = 0.0;  // $/acre
  double expected_return_rate = 0.0;     // 1/yr
  double terminal_volume = 0.0;          // MBF/acre standing just before clearcut
  double thinned_volume = 0.0;           // MBF/acre removed across all thinnings
};

// Capital tied up at `age`: bare land plus the stumpage value of the standing
// (post-removal) volume. Throws DomainError outside [0, rotation].
double capitalization(const VolumeTrajectory& traj, const EconParams& econ, double age);

// Accrual rate at `age` (right-limit): stumpage price times corrected growth
// rate, minus overhead. +infinity at age 0 when shape < 1.
double operating_profit_rate(const VolumeTrajectory& traj, const EconParams& econ, double age);

// Builds the full ledger on the trajectory's sample grid.
AccrualLedger build_ledger(const VolumeTrajectory& traj, const EconParams& econ);

// Expected profit rate, capitalization, and their ratio (the expected return
// rate) for one rotation. Throws DomainError when the expected
// capitalization is zero.
RotationReport expected_rates(const VolumeTrajectory& traj, const EconParams& econ);

// Shortest thinning-free rotation at which the expected profit rate reaches
// zero. Returns 0 when it is nonnegative from the outset. Throws
// NoBreakEvenError when no such rotation exists below 500 years.
double break_even_rotation(const YieldParams& params, const EconParams& econ);

}  // namespace rotecon
