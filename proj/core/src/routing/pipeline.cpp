#include "nassc/routing/pipeline.hpp"

#include <algorithm>
#include <chrono>

#include "nassc/commutation/commutation.hpp"
#include "nassc/ir/metrics.hpp"
#include "nassc/synthesis/blocks.hpp"
#include "nassc/synthesis/one_qubit.hpp"

namespace nassc::routing {

namespace {

std::size_t distinct(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return static_cast<std::size_t>(std::unique(v.begin(), v.end()) - v.begin());
}

}  // namespace

ir::Circuit optimize(const ir::Circuit& c, int max_rounds, OptimizeReport* report) {
  ir::Circuit cur = c;
  int rounds = 0;
  while (rounds < max_rounds) {
    ++rounds;
    const std::size_t cx_before = ir::count_kind(cur, ir::GateKind::CX);
    const std::size_t gates_before = cur.gates.size();
    cur = commutation::cancel_commuting(cur, report ? &report->cancelled_origins : nullptr);
    cur = synthesis::consolidate_blocks(cur, report ? &report->consolidated_origins : nullptr);
    cur = synthesis::merge_1q_runs(cur);
    if (ir::count_kind(cur, ir::GateKind::CX) == cx_before && cur.gates.size() == gates_before) break;
  }
  if (report) report->rounds = rounds;
  return cur;
}

ir::Circuit prepare_logical(const ir::Circuit& c, int max_rounds) {
  return optimize(synthesis::translate_to_cx_basis(c), max_rounds);
}

RoutingResult full_pipeline(const ir::Circuit& circuit, const topology::CouplingMap& map, const RouterConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  cfg.validate();
  const ir::Circuit logical = prepare_logical(circuit, std::max(1, cfg.post_rounds));
  const auto orig = ir::metrics(logical);
  const ir::Circuit padded = pad_to_device(logical, map);
  const QubitMapping layout = starting_layout(padded, map, cfg);
  RoutedDag routed = route_dag(padded, map, cfg, layout);
  const ir::Circuit physical = decompose_swaps(routed.dag, routed.labels);
  OptimizeReport report;
  RoutingResult r;
  r.circuit = optimize(physical, cfg.post_rounds, &report);
  const auto t1 = std::chrono::steady_clock::now();

  r.initial_mapping = routed.initial_mapping;
  r.final_mapping = routed.final_mapping;
  auto& s = r.stats;
  const auto m = ir::metrics(r.circuit);
  s.swaps_inserted = routed.chosen.size();
  for (const auto& c : routed.chosen) {
    if (c.c2q > 0) ++s.swaps_predicted_2q;
    if (c.ccommute1 > 0 || c.ccommute2 > 0) ++s.swaps_predicted_commute;
  }
  s.cnot_total_orig = orig.cnot_count;
  s.depth_orig = orig.depth;
  s.cnot_total = m.cnot_count;
  s.depth_total = m.depth;
  s.cnot_add = static_cast<long>(m.cnot_count) - static_cast<long>(orig.cnot_count);
  s.depth_add = static_cast<long>(m.depth) - static_cast<long>(orig.depth);
  s.swaps_opt_by_2q = distinct(report.consolidated_origins);
  s.swaps_opt_by_commute = distinct(report.cancelled_origins);
  s.wall_time_s = std::chrono::duration<double>(t1 - t0).count();
  return r;
}

}  // namespace nassc::routing
