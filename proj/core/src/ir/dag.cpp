#include "nassc/ir/dag.hpp"

#include <algorithm>
#include <functional>
#include <queue>

#include "nassc/error.hpp"

namespace nassc::ir {

CircuitDag::CircuitDag(int num_qubits, int num_clbits)
    : num_qubits_(num_qubits), num_clbits_(num_clbits) {
  nodes_.resize(static_cast<std::size_t>(2 * num_qubits));
  for (int w = 0; w < num_qubits; ++w) {
    DagNode& in = node(input(w));
    in.type = NodeType::Input;
    in.gate.qubits = {w};
    in.prev = {kNoNode};
    in.next = {output(w)};
    DagNode& out = node(output(w));
    out.type = NodeType::Output;
    out.gate.qubits = {w};
    out.prev = {input(w)};
    out.next = {kNoNode};
  }
}

int CircuitDag::slot_of(NodeId n, int wire) const {
  const auto& qs = node(n).gate.qubits;
  for (std::size_t i = 0; i < qs.size(); ++i) {
    if (qs[i] == wire) return static_cast<int>(i);
  }
  throw InvalidCircuit("node does not act on wire " + std::to_string(wire));
}

NodeId CircuitDag::prev_on(NodeId n, int wire) const {
  return node(n).prev[static_cast<std::size_t>(slot_of(n, wire))];
}

NodeId CircuitDag::next_on(NodeId n, int wire) const {
  return node(n).next[static_cast<std::size_t>(slot_of(n, wire))];
}

NodeId CircuitDag::last_on(int wire) const { return node(output(wire)).prev[0]; }

NodeId CircuitDag::append(Gate g) {
  for (int q : g.qubits) {
    if (q < 0 || q >= num_qubits_) throw InvalidCircuit(to_string(g) + ": qubit out of range");
  }
  const NodeId id = static_cast<NodeId>(nodes_.size());
  DagNode n;
  n.type = NodeType::Op;
  n.prev.resize(g.qubits.size());
  n.next.resize(g.qubits.size());
  n.commute_set.assign(g.qubits.size(), -1);
  n.gate = std::move(g);
  nodes_.push_back(std::move(n));
  DagNode& added = nodes_.back();
  for (std::size_t i = 0; i < added.gate.qubits.size(); ++i) {
    const int w = added.gate.qubits[i];
    const NodeId out = output(w);
    const NodeId last = node(out).prev[0];
    added.prev[i] = last;
    added.next[i] = out;
    node(last).next[static_cast<std::size_t>(slot_of(last, w))] = id;
    node(out).prev[0] = id;
  }
  ++num_ops_;
  return id;
}

NodeId CircuitDag::insert_after(NodeId anchor, int wire, Gate g) {
  if (g.qubits.size() != 1 || g.qubits[0] != wire) {
    throw InvalidCircuit("insert_after expects a one-qubit gate on the wire");
  }
  const NodeId after = next_on(anchor, wire);
  const NodeId id = static_cast<NodeId>(nodes_.size());
  DagNode n;
  n.type = NodeType::Op;
  n.gate = std::move(g);
  n.prev = {anchor};
  n.next = {after};
  n.commute_set = {-1};
  nodes_.push_back(std::move(n));
  node(anchor).next[static_cast<std::size_t>(slot_of(anchor, wire))] = id;
  node(after).prev[static_cast<std::size_t>(slot_of(after, wire))] = id;
  ++num_ops_;
  return id;
}

void CircuitDag::remove(NodeId n) {
  DagNode& d = node(n);
  if (d.type != NodeType::Op || !d.alive) throw InvalidCircuit("remove: not a live op node");
  for (std::size_t i = 0; i < d.gate.qubits.size(); ++i) {
    const int w = d.gate.qubits[i];
    const NodeId p = d.prev[i], x = d.next[i];
    node(p).next[static_cast<std::size_t>(slot_of(p, w))] = x;
    node(x).prev[static_cast<std::size_t>(slot_of(x, w))] = p;
  }
  d.alive = false;
  --num_ops_;
}

std::vector<NodeId> CircuitDag::predecessors(NodeId n) const {
  std::vector<NodeId> out;
  for (NodeId p : node(n).prev) {
    if (p != kNoNode && is_op(p) && std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  }
  return out;
}

std::vector<NodeId> CircuitDag::successors(NodeId n) const {
  std::vector<NodeId> out;
  for (NodeId s : node(n).next) {
    if (s != kNoNode && is_op(s) && std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  }
  return out;
}

std::vector<NodeId> CircuitDag::wire_nodes(int wire) const {
  std::vector<NodeId> out;
  for (NodeId n = next_on(input(wire), wire); n != output(wire); n = next_on(n, wire)) {
    out.push_back(n);
  }
  return out;
}

std::vector<NodeId> CircuitDag::topological_order() const {
  std::vector<int> indeg(nodes_.size(), 0);
  std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
  for (std::size_t i = static_cast<std::size_t>(2 * num_qubits_); i < nodes_.size(); ++i) {
    const NodeId id = static_cast<NodeId>(i);
    if (!nodes_[i].alive) continue;
    indeg[i] = static_cast<int>(predecessors(id).size());
    if (indeg[i] == 0) ready.push(id);
  }
  std::vector<NodeId> order;
  order.reserve(num_ops_);
  while (!ready.empty()) {
    const NodeId n = ready.top();
    ready.pop();
    order.push_back(n);
    for (NodeId s : successors(n)) {
      if (--indeg[static_cast<std::size_t>(s)] == 0) ready.push(s);
    }
  }
  if (order.size() != num_ops_) throw InvalidCircuit("DAG contains a cycle");
  return order;
}

Circuit CircuitDag::to_circuit() const {
  Circuit c(num_qubits_, num_clbits_);
  c.gates.reserve(num_ops_);
  for (NodeId n : topological_order()) c.gates.push_back(node(n).gate);
  return c;
}

void CircuitDag::clear_annotations() {
  for (DagNode& n : nodes_) {
    n.block_id.reset();
    std::fill(n.commute_set.begin(), n.commute_set.end(), -1);
  }
}

CircuitDag build_dag(const Circuit& c) {
  CircuitDag dag(c.num_qubits, c.num_clbits);
  for (const Gate& g : c.gates) dag.append(g);
  return dag;
}

}  // namespace nassc::ir
