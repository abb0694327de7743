#pragma once

#include <vector>

#include "nassc/ir/gate.hpp"

namespace nassc::ir {

struct Circuit {
  int num_qubits = 0;
  int num_clbits = 0;
  std::vector<Gate> gates;

  Circuit() = default;
  explicit Circuit(int n, int clbits = 0) : num_qubits(n), num_clbits(clbits) {}

  Circuit& add(Gate g) {
    gates.push_back(std::move(g));
    return *this;
  }

  bool operator==(const Circuit& o) const {
    return num_qubits == o.num_qubits && num_clbits == o.num_clbits &&
           gates == o.gates;
  }
};

// Throws InvalidCircuit on out-of-range qubits or malformed gates.
void validate(const Circuit& c);

// Gates in reverse order (no inversion); used for reverse traversals.
Circuit reversed(const Circuit& c);

}  // namespace nassc::ir
