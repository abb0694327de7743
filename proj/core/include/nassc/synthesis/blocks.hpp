#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "nassc/ir/circuit.hpp"
#include "nassc/ir/dag.hpp"
#include "nassc/ir/matrix.hpp"

namespace nassc::synthesis {

struct TwoQubitBlock {
  int block_id = -1;
  std::pair<int, int> qubit_pair{-1, -1};
  std::vector<ir::NodeId> nodes;  // topological order
};

// Incremental block builder. Gates are fed in a topological order; trailing
// one-qubit gates may be withdrawn again (the router moves them through a
// SWAP).
class BlockTracker {
 public:
  explicit BlockTracker(int num_qubits);

  // n must be the newest node on each of its wires.
  void on_append(const ir::CircuitDag& dag, ir::NodeId n);
  // n must be a one-qubit node that is the last node on its wire.
  void on_remove(const ir::CircuitDag& dag, ir::NodeId n);

  // Block holding the last node of the wire, or -1.
  int open_block(int wire) const { return open_[static_cast<std::size_t>(wire)]; }
  int block_of(ir::NodeId n) const;
  const std::vector<TwoQubitBlock>& blocks() const { return blocks_; }
  const ir::Mat4& unitary(const ir::CircuitDag& dag, int block);
  // Bumped whenever the block's contents change.
  std::uint64_t version(int block) const { return version_[static_cast<std::size_t>(block)]; }

 private:
  void add_to(const ir::CircuitDag& dag, int block, ir::NodeId n);

  std::vector<int> open_;
  std::vector<std::vector<ir::NodeId>> pending_;
  std::vector<TwoQubitBlock> blocks_;
  std::vector<ir::Mat4> unitary_;
  std::vector<char> dirty_;
  std::vector<std::uint64_t> version_;
  std::vector<int> node_block_;
};

// Greedy maximal blocks. A block opens at a two-qubit gate, absorbing the
// unblocked one-qubit gates just before it, and takes every following gate on
// its pair until a wire is interrupted.
// Writes block_id annotations into the DAG.
std::vector<TwoQubitBlock> collect_blocks(ir::CircuitDag& dag);

ir::Mat4 block_unitary(const ir::CircuitDag& dag, const TwoQubitBlock& b);

std::size_t block_cnot_count(const ir::CircuitDag& dag, const TwoQubitBlock& b);

// Reduction a SWAP appended to a block with unitary u would enjoy:
// min_cnot(u) + 3 - min_cnot(SWAP * u), clamped to [0, 3].
int c2q_reduction(const ir::Mat4& u);

// Replaces a block with its KAK synthesis when that lowers the CX count or
// the block holds two-qubit gates other than CX.
ir::Circuit consolidate_blocks(const ir::Circuit& c, std::vector<int>* touched_origins = nullptr);

// Rewrites CY, CZ, CRX and SWAP into CX plus one-qubit gates using textbook
// identities (controls stay diagonal).
ir::Circuit translate_to_cx_basis(const ir::Circuit& c);

}  // namespace nassc::synthesis
