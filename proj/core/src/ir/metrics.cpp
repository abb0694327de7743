#include "nassc/ir/metrics.hpp"

#include <algorithm>

#include "nassc/error.hpp"

namespace nassc::ir {

std::size_t count_kind(const Circuit& c, GateKind k) {
  return static_cast<std::size_t>(
      std::count_if(c.gates.begin(), c.gates.end(), [k](const Gate& g) { return g.kind == k; }));
}

std::size_t depth(const Circuit& c) {
  std::vector<std::size_t> level(static_cast<std::size_t>(c.num_qubits), 0);
  std::size_t best = 0;
  for (const Gate& g : c.gates) {
    std::size_t l = 0;
    for (int q : g.qubits) l = std::max(l, level[static_cast<std::size_t>(q)]);
    // Barriers order gates but add no layer.
    if (g.kind != GateKind::BARRIER) ++l;
    for (int q : g.qubits) level[static_cast<std::size_t>(q)] = l;
    best = std::max(best, l);
  }
  return best;
}

Metrics metrics(const Circuit& c) {
  Metrics m;
  for (const Gate& g : c.gates) {
    if (g.kind == GateKind::SWAP) throw UndecomposedSwap("metrics: SWAP gate still present");
    if (g.kind == GateKind::CX) ++m.cnot_count;
    if (g.kind != GateKind::BARRIER) ++m.gate_count;
  }
  m.depth = depth(c);
  return m;
}

}  // namespace nassc::ir
