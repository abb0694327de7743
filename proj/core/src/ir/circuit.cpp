#include "nassc/ir/circuit.hpp"

#include <algorithm>

#include "nassc/error.hpp"

namespace nassc::ir {

void validate(const Circuit& c) {
  if (c.num_qubits < 0 || c.num_clbits < 0) {
    throw InvalidCircuit("negative register size");
  }
  for (const Gate& g : c.gates) {
    validate(g);
    for (int q : g.qubits) {
      if (q >= c.num_qubits) {
        throw InvalidCircuit(to_string(g) + ": qubit out of range");
      }
    }
    if (g.kind == GateKind::MEASURE && g.clbit >= c.num_clbits) {
      throw InvalidCircuit(to_string(g) + ": classical bit out of range");
    }
  }
}

Circuit reversed(const Circuit& c) {
  Circuit r = c;
  std::reverse(r.gates.begin(), r.gates.end());
  return r;
}

}  // namespace nassc::ir
