#pragma once

#include "ddpath/circuit/circuit.hpp"
#include "ddpath/errors.hpp"
#include "ddpath/simpath/path.hpp"
#include "ddpath/tn/plan.hpp"

#include <cstddef>

namespace ddpath::tn {

[[nodiscard]] inline path::SimulationPath
toSimulationPath(const ContractionPlan& plan) {
  return {plan.pairs};
}

/// Imports a plan over exported ids with strict adjacency.
[[nodiscard]] inline path::ValidatedPath importPath(const ContractionPlan& plan,
                                                    std::size_t gateCount) {
  try {
    return path::validate(toSimulationPath(plan), gateCount);
  } catch (const ValidationError& e) {
    throw ImportError(e.task(), e.reason());
  }
}

/// Imports a plan for `c`, admitting pairs joined through the commuting
/// bypass.
[[nodiscard]] inline path::ValidatedPath importPath(const ContractionPlan& plan,
                                                    const qc::Circuit& c) {
  try {
    return path::validate(toSimulationPath(plan), c);
  } catch (const ValidationError& e) {
    throw ImportError(e.task(), e.reason());
  }
}

} // namespace ddpath::tn
