#pragma once

#include <cstdint>
#include <vector>

#include "nassc/ir/circuit.hpp"

namespace nassc::ir {

struct EquivalenceOptions {
  int random_inputs = 20;
  std::uint64_t seed = 2024;
  double tol = 1e-8;
  // Physical qubits touched by b (plus mapped ones) are compacted before
  // simulation; this bounds the compacted register.
  int max_qubits = kMaxEquivalenceQubits;
  static constexpr int kMaxEquivalenceQubits = 18;
};

// b runs on physical qubits. Logical qubit l starts on initial[l] and ends on
// final_map[l]; physical qubits outside initial start in |0> and must end in
// |0>. An empty `initial` means the identity layout.
bool equivalent_up_to_permutation(const Circuit& a, const Circuit& b,
                                  const std::vector<int>& final_map,
                                  const std::vector<int>& initial = {},
                                  const EquivalenceOptions& opts = {});

}  // namespace nassc::ir
