#pragma once

#include <vector>

#include "nassc/ir/circuit.hpp"
#include "nassc/routing/router.hpp"
#include "nassc/topology/coupling_map.hpp"

namespace nassc::routing {

struct OptimizeReport {
  int rounds = 0;
  // SWAP origins whose CXs sat in a block that lost CXs on re-synthesis.
  std::vector<int> consolidated_origins;
  // SWAP origins that lost a CX to cancellation.
  std::vector<int> cancelled_origins;
};

// Cancellation, block re-synthesis and one-qubit merging, repeated until the
// gate counts stop changing or max_rounds is hit.
ir::Circuit optimize(const ir::Circuit& c, int max_rounds = 10, OptimizeReport* report = nullptr);

// Logical pre-passes: CX-basis translation followed by optimize().
ir::Circuit prepare_logical(const ir::Circuit& c, int max_rounds = 10);

// Pre-passes, layout, SWAP search, label-driven decomposition, post-passes
// and metrics.
RoutingResult full_pipeline(const ir::Circuit& circuit, const topology::CouplingMap& map, const RouterConfig& cfg);

}  // namespace nassc::routing
