#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nassc/ir/circuit.hpp"

namespace nassc::ir {

using NodeId = std::int32_t;
inline constexpr NodeId kNoNode = -1;

enum class NodeType : std::uint8_t { Input, Output, Op };

struct DagNode {
  NodeType type = NodeType::Op;
  Gate gate;  // sentinels carry their wire in gate.qubits[0]
  std::vector<NodeId> prev;  // per qubit slot
  std::vector<NodeId> next;  // per qubit slot
  bool alive = true;
  std::optional<int> block_id;
  std::vector<int> commute_set;  // per qubit slot, -1 when unset
};

// Dependency DAG with per-wire links. Nodes keep stable ids; removed nodes are
// marked dead and unlinked. Ids are topological only while the DAG is built by
// appending, so iteration goes through topological_order().
class CircuitDag {
 public:
  CircuitDag() = default;
  explicit CircuitDag(int num_qubits, int num_clbits = 0);

  int num_qubits() const { return num_qubits_; }
  int num_clbits() const { return num_clbits_; }

  NodeId append(Gate g);
  // Inserts a one-qubit gate directly after `anchor` on `wire`.
  NodeId insert_after(NodeId anchor, int wire, Gate g);
  void remove(NodeId n);

  NodeId input(int wire) const { return static_cast<NodeId>(wire); }
  NodeId output(int wire) const { return static_cast<NodeId>(num_qubits_ + wire); }
  // Last op node on a wire, or the input sentinel.
  NodeId last_on(int wire) const;

  const DagNode& node(NodeId n) const { return nodes_[static_cast<std::size_t>(n)]; }
  DagNode& node(NodeId n) { return nodes_[static_cast<std::size_t>(n)]; }
  bool is_op(NodeId n) const { return node(n).type == NodeType::Op; }

  int slot_of(NodeId n, int wire) const;
  NodeId prev_on(NodeId n, int wire) const;
  NodeId next_on(NodeId n, int wire) const;

  // Distinct op predecessors/successors (sentinels excluded).
  std::vector<NodeId> predecessors(NodeId n) const;
  std::vector<NodeId> successors(NodeId n) const;

  // Ops on one wire from input to output.
  std::vector<NodeId> wire_nodes(int wire) const;

  std::vector<NodeId> topological_order() const;
  std::size_t num_ops() const { return num_ops_; }
  std::size_t num_nodes_total() const { return nodes_.size(); }

  // Node count including sentinels, as in the textbook definition.
  std::size_t num_nodes() const { return num_ops_ + 2 * static_cast<std::size_t>(num_qubits_); }

  Circuit to_circuit() const;
  void clear_annotations();

 private:
  int num_qubits_ = 0;
  int num_clbits_ = 0;
  std::vector<DagNode> nodes_;
  std::size_t num_ops_ = 0;
};

CircuitDag build_dag(const Circuit& c);

}  // namespace nassc::ir
