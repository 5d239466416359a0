#pragma once

#include <optional>
#include <string>

#include "rotecon/accounting.hpp"
#include "rotecon/growth.hpp"
#include "rotecon/prices.hpp"

namespace rotecon {

// A fully described study case. `plan` and `prices` are optional blocks;
// commands that need a missing block refuse to run rather than guess one.
struct Scenario {
  std::string name = "scenario";
  YieldParams yield;
  EconParams econ;
  std::optional<ManagementPlan> plan;
  std::optional<PriceProcess> prices;

  void validate() const;
};

// Parses a scenario from JSON text. Field errors throw ParseError with the
// offending path ("economics.stumpage_price"); invariant violations throw
// ValidationError. When economics.bare_land_value is omitted it defaults to
// the establishment cost for yield label "high" and half of it for "low";
// any other label must state it explicitly.
Scenario parse_scenario(const std::string& text);

// Reads and parses a scenario file. Unreadable files throw IoError.
Scenario load_scenario(const std::string& path);

}  // namespace rotecon
