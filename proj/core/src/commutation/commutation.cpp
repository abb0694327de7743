#include "nassc/commutation/commutation.hpp"

#include <algorithm>
#include <tuple>

#include "nassc/error.hpp"
#include "nassc/ir/matrix.hpp"
#include "nassc/synthesis/one_qubit.hpp"

namespace nassc::commutation {

using ir::Gate;
using ir::GateKind;
using ir::NodeId;

DecompositionLabel label_for(int a, int b, int control, Rationale why) {
  (void)b;
  return {control == a ? Orientation::FirstCxControlOnA : Orientation::FirstCxControlOnB, why};
}

int first_control(int a, int b, const DecompositionLabel& l) {
  switch (l.orientation) {
    case Orientation::FirstCxControlOnA: return a;
    case Orientation::FirstCxControlOnB: return b;
    default: return std::min(a, b);
  }
}

namespace {

bool shares_qubit(const Gate& a, const Gate& b) {
  for (int q : a.qubits) {
    if (std::find(b.qubits.begin(), b.qubits.end(), q) != b.qubits.end()) return true;
  }
  return false;
}

bool numeric_commute(const Gate& a, const Gate& b) {
  std::vector<int> support = a.qubits;
  for (int q : b.qubits) {
    if (std::find(support.begin(), support.end(), q) == support.end()) support.push_back(q);
  }
  const ir::MatX ma = ir::embed(a, support), mb = ir::embed(b, support);
  return (ma * mb - mb * ma).cwiseAbs().maxCoeff() < 1e-9;
}

}  // namespace

bool gates_commute(const Gate& g1, const Gate& g2) {
  if (!shares_qubit(g1, g2)) return true;
  if (!ir::is_unitary(g1.kind) || !ir::is_unitary(g2.kind)) return false;
  if (g1.kind == g2.kind && g1.qubits == g2.qubits && g1.params == g2.params) return true;
  if (ir::is_diagonal(g1) && ir::is_diagonal(g2)) return true;
  if (g1.kind == GateKind::CX && g2.kind == GateKind::CX) {
    return g1.qubits[0] != g2.qubits[1] && g1.qubits[1] != g2.qubits[0];
  }
  if (g1.kind == GateKind::ID || g2.kind == GateKind::ID) return true;
  const Gate* one = g1.qubits.size() == 1 ? &g1 : g2.qubits.size() == 1 ? &g2 : nullptr;
  const Gate* other = one == &g1 ? &g2 : &g1;
  if (one && other->kind == GateKind::CX) {
    if (one->qubits[0] == other->qubits[0]) return ir::is_diagonal(*one);
    if (one->kind == GateKind::X || one->kind == GateKind::SX) return true;
    if (ir::is_diagonal(*one) || one->kind == GateKind::H || one->kind == GateKind::Y) return false;
  }
  return numeric_commute(g1, g2);
}

void CommuteTracker::on_append(ir::CircuitDag& dag, NodeId n) {
  const Gate& g = dag.node(n).gate;
  for (std::size_t slot = 0; slot < g.qubits.size(); ++slot) {
    const int w = g.qubits[slot];
    int id = -1;
    const NodeId prev = dag.node(n).prev[slot];
    if (dag.is_op(prev)) {
      const int set = dag.node(prev).commute_set[static_cast<std::size_t>(dag.slot_of(prev, w))];
      std::size_t count = 0;
      bool ok = true;
      for (NodeId m = prev; dag.is_op(m); m = dag.prev_on(m, w)) {
        if (dag.node(m).commute_set[static_cast<std::size_t>(dag.slot_of(m, w))] != set) break;
        if (++count >= kSetCap || !gates_commute(dag.node(m).gate, g)) {
          ok = false;
          break;
        }
      }
      if (ok) id = set;
    }
    dag.node(n).commute_set[slot] = id >= 0 ? id : next_id_++;
  }
}

CommuteMap commutation_analysis(ir::CircuitDag& dag) {
  dag.clear_annotations();
  CommuteTracker t;
  CommuteMap out;
  for (NodeId n : dag.topological_order()) {
    t.on_append(dag, n);
    const auto& node = dag.node(n);
    for (std::size_t s = 0; s < node.gate.qubits.size(); ++s) out[{n, node.gate.qubits[s]}] = node.commute_set[s];
  }
  return out;
}

ir::CircuitDag commutative_cancellation(const ir::CircuitDag& in, std::vector<int>* removed_origins) {
  ir::CircuitDag dag = in;
  using Key = std::tuple<GateKind, std::vector<int>, std::vector<int>>;
  std::map<Key, std::vector<NodeId>> groups;
  for (NodeId n : dag.topological_order()) {
    const auto& node = dag.node(n);
    if (!ir::is_self_inverse(node.gate.kind)) continue;
    if (std::find(node.commute_set.begin(), node.commute_set.end(), -1) != node.commute_set.end()) continue;
    groups[Key{node.gate.kind, node.gate.qubits, node.commute_set}].push_back(n);
  }
  for (auto& [key, nodes] : groups) {
    const std::size_t drop = nodes.size() / 2 * 2;
    for (std::size_t i = 0; i < drop; ++i) {
      if (removed_origins && dag.node(nodes[i]).gate.origin >= 0) {
        removed_origins->push_back(dag.node(nodes[i]).gate.origin);
      }
      dag.remove(nodes[i]);
    }
  }
  return dag;
}

ir::Circuit cancel_commuting(const ir::Circuit& c, std::vector<int>* removed_origins) {
  ir::Circuit cur = c;
  for (;;) {
    ir::CircuitDag dag = ir::build_dag(cur);
    commutation_analysis(dag);
    const std::size_t before = dag.num_ops();
    ir::CircuitDag after = commutative_cancellation(dag, removed_origins);
    if (after.num_ops() == before) return cur;
    cur = after.to_circuit();
  }
}

NodeId skip_trailing_1q(const ir::CircuitDag& dag, int wire) {
  NodeId n = dag.last_on(wire);
  while (dag.is_op(n) && ir::is_single_qubit_unitary(dag.node(n).gate)) n = dag.prev_on(n, wire);
  return n;
}

namespace {

int set_on(const ir::CircuitDag& dag, NodeId n, int wire) {
  return dag.node(n).commute_set[static_cast<std::size_t>(dag.slot_of(n, wire))];
}

// Members of the set holding `from` on the wire, newest first, up to the cap.
std::vector<NodeId> set_members(const ir::CircuitDag& dag, NodeId from, int wire) {
  std::vector<NodeId> out;
  const int set = set_on(dag, from, wire);
  for (NodeId m = from; dag.is_op(m) && out.size() < kSetCap; m = dag.prev_on(m, wire)) {
    if (set_on(dag, m, wire) != set) break;
    out.push_back(m);
  }
  return out;
}

bool on_pair(const Gate& g, int a, int b) {
  return g.qubits.size() == 2 &&
         ((g.qubits[0] == a && g.qubits[1] == b) || (g.qubits[0] == b && g.qubits[1] == a));
}

// First node before m's commute set on the wire.
NodeId before_set(const ir::CircuitDag& dag, NodeId m, int wire) {
  const int set = set_on(dag, m, wire);
  NodeId x = dag.prev_on(m, wire);
  while (dag.is_op(x) && set_on(dag, x, wire) == set) x = dag.prev_on(x, wire);
  return x;
}

// Gates on the pair chained right before each other's commute sets on both
// wires, oldest first, ending with m.
std::vector<NodeId> pair_chain(const ir::CircuitDag& dag, NodeId m, int a, int b) {
  std::vector<NodeId> chain{m};
  while (chain.size() < kSetCap) {
    const NodeId x = before_set(dag, chain.back(), a);
    if (x != before_set(dag, chain.back(), b) || !dag.is_op(x)) break;
    const Gate& g = dag.node(x).gate;
    if (!on_pair(g, a, b) || (g.kind != GateKind::CX && g.kind != GateKind::SWAP)) break;
    chain.push_back(x);
  }
  std::reverse(chain.begin(), chain.end());
  return chain;
}

// Lowers the chain (SWAPs per label) and cancels adjacent equal CXs. True
// when the last CX of the final node is eaten by an earlier one.
bool last_cx_consumed(const ir::CircuitDag& dag, const std::vector<NodeId>& chain, const LabelLookup& labels,
                      const DecompositionLabel& last_label) {
  std::vector<std::pair<int, int>> stack;
  bool consumed = false;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const Gate& g = dag.node(chain[i]).gate;
    std::vector<std::pair<int, int>> cxs;
    if (g.kind == GateKind::CX) {
      cxs.push_back({g.qubits[0], g.qubits[1]});
    } else {
      DecompositionLabel l = i + 1 == chain.size() ? last_label : DecompositionLabel{};
      if (i + 1 < chain.size() && labels) l = labels(chain[i]);
      const int c = first_control(g.qubits[0], g.qubits[1], l);
      const int t = c == g.qubits[0] ? g.qubits[1] : g.qubits[0];
      cxs = {{c, t}, {t, c}, {c, t}};
    }
    for (const auto& cx : cxs) {
      consumed = !stack.empty() && stack.back() == cx;
      if (consumed) stack.pop_back();
      else stack.push_back(cx);
    }
  }
  return consumed;
}

}  // namespace

Prediction predict_ccommute1(const ir::CircuitDag& dag, int a, int b, const LabelLookup& labels) {
  Prediction p;
  const NodeId na = skip_trailing_1q(dag, a), nb = skip_trailing_1q(dag, b);
  if (!dag.is_op(na) || !dag.is_op(nb)) return p;
  const std::vector<NodeId> ma = set_members(dag, na, a);
  const std::vector<NodeId> mb = set_members(dag, nb, b);
  // The SWAP's first CX has to join both sets.
  if (ma.size() >= kSetCap || mb.size() >= kSetCap) return p;
  const int sb = set_on(dag, nb, b);
  for (NodeId m : ma) {
    const Gate& g = dag.node(m).gate;
    if (g.kind != GateKind::CX || !on_pair(g, a, b)) continue;
    if (set_on(dag, m, b) != sb) continue;
    // Earlier gates on the pair may already cancel it once SWAPs are lowered.
    if (last_cx_consumed(dag, pair_chain(dag, m, a, b), labels, {})) continue;
    p.value = 2;
    p.label = label_for(a, b, g.qubits[0], Rationale::Commute1);
    return p;
  }
  return p;
}

Prediction predict_ccommute2(const ir::CircuitDag& dag, int a, int b, const LabelLookup& labels) {
  Prediction p;
  NodeId swap_node = ir::kNoNode;
  std::vector<NodeId> middle[2];
  const int wires[2] = {a, b};
  for (int i = 0; i < 2; ++i) {
    const int w = wires[i];
    NodeId found = ir::kNoNode;
    std::size_t steps = 0;
    for (NodeId m = skip_trailing_1q(dag, w); dag.is_op(m); m = dag.prev_on(m, w)) {
      const Gate& g = dag.node(m).gate;
      if (g.kind == GateKind::SWAP && on_pair(g, a, b)) {
        found = m;
        break;
      }
      if (!ir::is_unitary(g.kind) || g.kind == GateKind::SWAP || ++steps > kSetCap - 2) return p;
      middle[i].push_back(m);
    }
    if (found == ir::kNoNode || (swap_node != ir::kNoNode && found != swap_node)) return p;
    swap_node = found;
  }
  if (middle[0].empty() && middle[1].empty()) return p;
  // Sandwiched gates must form one commute set per wire.
  for (int i = 0; i < 2; ++i) {
    for (NodeId m : middle[i]) {
      if (set_on(dag, m, wires[i]) != set_on(dag, middle[i].front(), wires[i])) return p;
    }
  }
  const Gate& s = dag.node(swap_node).gate;
  const DecompositionLabel existing = labels ? labels(swap_node) : DecompositionLabel{};
  std::vector<int> controls;
  if (existing.labeled()) {
    controls.push_back(first_control(s.qubits[0], s.qubits[1], existing));
  } else {
    controls = {a, b};
  }
  for (int c : controls) {
    const Gate probe = ir::cx(c, c == a ? b : a);
    bool ok = true;
    for (int i = 0; i < 2 && ok; ++i) {
      for (NodeId m : middle[i]) {
        // A copy of the probe in the middle would pair off with one of them.
        if (dag.node(m).gate == probe || !gates_commute(dag.node(m).gate, probe)) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) continue;
    const DecompositionLabel partner_label =
        existing.labeled() ? existing : label_for(s.qubits[0], s.qubits[1], c, Rationale::Commute2);
    // The partner's inner CX must survive whatever precedes it on the pair.
    if (last_cx_consumed(dag, pair_chain(dag, swap_node, a, b), labels, partner_label)) continue;
    p.value = 2;
    p.label = label_for(a, b, c, Rationale::Commute2);
    p.partner = swap_node;
    p.partner_label = partner_label;
    return p;
  }
  return p;
}

ir::CircuitDag move_1q_through_swap(const ir::CircuitDag& in, NodeId swap_node) {
  ir::CircuitDag dag = in;
  const Gate& s = dag.node(swap_node).gate;
  if (s.kind != GateKind::SWAP) throw InvalidCircuit("move_1q_through_swap: node is not a SWAP");
  const int wires[2] = {s.qubits[0], s.qubits[1]};
  std::vector<Gate> moved[2];
  for (int i = 0; i < 2; ++i) {
    std::vector<NodeId> run;
    for (NodeId m = dag.prev_on(swap_node, wires[i]);
         dag.is_op(m) && ir::is_single_qubit_unitary(dag.node(m).gate); m = dag.prev_on(m, wires[i])) {
      run.push_back(m);
    }
    std::reverse(run.begin(), run.end());
    for (NodeId m : run) {
      Gate g = dag.node(m).gate;
      g.qubits[0] = wires[1 - i];
      moved[i].push_back(std::move(g));
      dag.remove(m);
    }
  }
  for (int i = 0; i < 2; ++i) {
    const int w = wires[1 - i];
    if (moved[i].empty()) continue;
    // Fold the moved gates and whatever one-qubit run already follows.
    ir::Mat2 m = ir::Mat2::Identity();
    for (const Gate& g : moved[i]) m = ir::gate_matrix_1q(g) * m;
    std::vector<NodeId> after;
    for (NodeId x = dag.next_on(swap_node, w); dag.is_op(x) && ir::is_single_qubit_unitary(dag.node(x).gate);
         x = dag.next_on(x, w)) {
      after.push_back(x);
    }
    for (NodeId x : after) {
      m = ir::gate_matrix_1q(dag.node(x).gate) * m;
      dag.remove(x);
    }
    if (moved[i].size() == 1 && after.empty()) {
      dag.insert_after(swap_node, w, moved[i][0]);
    } else if (!synthesis::is_identity_up_to_phase(m)) {
      const synthesis::U3Angles u = synthesis::u3_from_matrix(m);
      dag.insert_after(swap_node, w, ir::u3(u.theta, u.phi, u.lambda, w));
    }
  }
  return dag;
}

}  // namespace nassc::commutation
