#include "nassc/synthesis/blocks.hpp"

#include <algorithm>
#include <numbers>

#include "nassc/synthesis/two_qubit.hpp"

namespace nassc::synthesis {

using ir::GateKind;
using ir::NodeId;

BlockTracker::BlockTracker(int num_qubits)
    : open_(static_cast<std::size_t>(num_qubits), -1), pending_(static_cast<std::size_t>(num_qubits)) {}

int BlockTracker::block_of(NodeId n) const {
  const auto i = static_cast<std::size_t>(n);
  return i < node_block_.size() ? node_block_[i] : -1;
}

void BlockTracker::add_to(const ir::CircuitDag& dag, int block, NodeId n) {
  const auto b = static_cast<std::size_t>(block);
  blocks_[b].nodes.push_back(n);
  if (static_cast<std::size_t>(n) >= node_block_.size()) node_block_.resize(static_cast<std::size_t>(n) + 1, -1);
  node_block_[static_cast<std::size_t>(n)] = block;
  ++version_[b];
  if (!dirty_[b]) {
    const auto [pa, pb] = blocks_[b].qubit_pair;
    unitary_[b] = ir::pair_unitary({dag.node(n).gate}, pa, pb) * unitary_[b];
  }
}

void BlockTracker::on_append(const ir::CircuitDag& dag, NodeId n) {
  const ir::Gate& g = dag.node(n).gate;
  if (ir::is_two_qubit_unitary(g)) {
    const int p = g.qubits[0], q = g.qubits[1];
    const int b = open_[static_cast<std::size_t>(p)];
    if (b >= 0 && open_[static_cast<std::size_t>(q)] == b) {
      const auto [pa, pb] = blocks_[static_cast<std::size_t>(b)].qubit_pair;
      if ((pa == p && pb == q) || (pa == q && pb == p)) {
        add_to(dag, b, n);
        return;
      }
    }
    const int id = static_cast<int>(blocks_.size());
    TwoQubitBlock blk;
    blk.block_id = id;
    blk.qubit_pair = {p, q};
    blocks_.push_back(std::move(blk));
    unitary_.push_back(ir::Mat4::Identity());
    dirty_.push_back(0);
    version_.push_back(0);
    for (int w : {p, q}) {
      for (NodeId m : pending_[static_cast<std::size_t>(w)]) add_to(dag, id, m);
      pending_[static_cast<std::size_t>(w)].clear();
      open_[static_cast<std::size_t>(w)] = id;
    }
    add_to(dag, id, n);
  } else if (ir::is_single_qubit_unitary(g)) {
    const int w = g.qubits[0];
    const int b = open_[static_cast<std::size_t>(w)];
    if (b >= 0) {
      add_to(dag, b, n);
    } else {
      pending_[static_cast<std::size_t>(w)].push_back(n);
    }
  } else {
    for (int w : g.qubits) {
      open_[static_cast<std::size_t>(w)] = -1;
      pending_[static_cast<std::size_t>(w)].clear();
    }
  }
}

void BlockTracker::on_remove(const ir::CircuitDag& dag, NodeId n) {
  const int w = dag.node(n).gate.qubits[0];
  auto& pend = pending_[static_cast<std::size_t>(w)];
  if (auto it = std::find(pend.begin(), pend.end(), n); it != pend.end()) {
    pend.erase(it);
    return;
  }
  const int b = block_of(n);
  if (b < 0) return;
  auto& nodes = blocks_[static_cast<std::size_t>(b)].nodes;
  nodes.erase(std::find(nodes.begin(), nodes.end(), n));
  node_block_[static_cast<std::size_t>(n)] = -1;
  dirty_[static_cast<std::size_t>(b)] = 1;
  ++version_[static_cast<std::size_t>(b)];
}

const ir::Mat4& BlockTracker::unitary(const ir::CircuitDag& dag, int block) {
  const auto b = static_cast<std::size_t>(block);
  if (dirty_[b]) {
    unitary_[b] = block_unitary(dag, blocks_[b]);
    dirty_[b] = 0;
  }
  return unitary_[b];
}

std::vector<TwoQubitBlock> collect_blocks(ir::CircuitDag& dag) {
  BlockTracker t(dag.num_qubits());
  for (NodeId n : dag.topological_order()) t.on_append(dag, n);
  std::vector<TwoQubitBlock> out = t.blocks();
  for (const TwoQubitBlock& b : out) {
    for (NodeId n : b.nodes) dag.node(n).block_id = b.block_id;
  }
  return out;
}

ir::Mat4 block_unitary(const ir::CircuitDag& dag, const TwoQubitBlock& b) {
  std::vector<ir::Gate> gates;
  gates.reserve(b.nodes.size());
  for (NodeId n : b.nodes) gates.push_back(dag.node(n).gate);
  return ir::pair_unitary(gates, b.qubit_pair.first, b.qubit_pair.second);
}

std::size_t block_cnot_count(const ir::CircuitDag& dag, const TwoQubitBlock& b) {
  return static_cast<std::size_t>(std::count_if(b.nodes.begin(), b.nodes.end(), [&](NodeId n) {
    return dag.node(n).gate.kind == GateKind::CX;
  }));
}

int c2q_reduction(const ir::Mat4& u) {
  static const ir::Mat4 swap_m = ir::gate_matrix_2q(ir::swap(0, 1));
  const int before = min_cnot_count(u);
  const int after = min_cnot_count(swap_m * u);
  return std::clamp(before + 3 - after, 0, 3);
}

ir::Circuit consolidate_blocks(const ir::Circuit& c, std::vector<int>* touched_origins) {
  ir::CircuitDag dag = ir::build_dag(c);
  const std::vector<TwoQubitBlock> blocks = collect_blocks(dag);
  std::vector<ir::Circuit> replacement(blocks.size());
  std::vector<char> replaced(blocks.size(), 0);
  std::vector<NodeId> anchor(blocks.size(), ir::kNoNode);
  for (const TwoQubitBlock& b : blocks) {
    const auto i = static_cast<std::size_t>(b.block_id);
    std::size_t cx = 0;
    bool foreign = false;
    for (NodeId n : b.nodes) {
      const ir::Gate& g = dag.node(n).gate;
      if (g.kind == GateKind::CX) ++cx;
      else if (ir::is_two_qubit_unitary(g)) foreign = true;
      if (anchor[i] == ir::kNoNode && ir::is_two_qubit_unitary(g)) anchor[i] = n;
    }
    const ir::Mat4 u = block_unitary(dag, b);
    const auto k = static_cast<std::size_t>(min_cnot_count(u));
    if (k < cx || foreign) {
      replaced[i] = 1;
      replacement[i] = kak_synthesize(u, b.qubit_pair.first, b.qubit_pair.second);
      if (touched_origins && k < cx) {
        for (NodeId n : b.nodes) {
          if (dag.node(n).gate.origin >= 0) touched_origins->push_back(dag.node(n).gate.origin);
        }
      }
    }
  }
  ir::Circuit out(c.num_qubits, c.num_clbits);
  out.gates.reserve(c.gates.size());
  for (NodeId n : dag.topological_order()) {
    const auto& node = dag.node(n);
    if (node.block_id && replaced[static_cast<std::size_t>(*node.block_id)]) {
      const auto i = static_cast<std::size_t>(*node.block_id);
      if (anchor[i] == n) {
        for (const ir::Gate& g : replacement[i].gates) out.gates.push_back(g);
      }
      continue;
    }
    out.gates.push_back(node.gate);
  }
  return out;
}

ir::Circuit translate_to_cx_basis(const ir::Circuit& c) {
  constexpr double pi = std::numbers::pi;
  ir::Circuit out(c.num_qubits, c.num_clbits);
  out.gates.reserve(c.gates.size());
  for (const ir::Gate& g : c.gates) {
    const std::size_t first = out.gates.size();
    if (g.qubits.size() != 2 || g.kind == GateKind::CX || g.kind == GateKind::BARRIER) {
      out.gates.push_back(g);
      continue;
    }
    const int a = g.qubits[0], b = g.qubits[1];
    switch (g.kind) {
      case GateKind::CZ: out.add(ir::h(b)).add(ir::cx(a, b)).add(ir::h(b)); break;
      case GateKind::CY: out.add(ir::rz(-pi / 2, b)).add(ir::cx(a, b)).add(ir::rz(pi / 2, b)); break;
      case GateKind::CRX: {
        const double t = g.params[0];
        out.add(ir::rz(pi / 2, b)).add(ir::cx(a, b)).add(ir::u3(-t / 2, 0, 0, b));
        out.add(ir::cx(a, b)).add(ir::u3(t / 2, -pi / 2, 0, b));
        break;
      }
      case GateKind::SWAP: out.add(ir::cx(a, b)).add(ir::cx(b, a)).add(ir::cx(a, b)); break;
      default: out.gates.push_back(g); break;
    }
    for (std::size_t i = first; i < out.gates.size(); ++i) out.gates[i].origin = g.origin;
  }
  return out;
}

}  // namespace nassc::synthesis
