#pragma once

#include <cstddef>

#include "nassc/ir/circuit.hpp"

namespace nassc::ir {

struct Metrics {
  std::size_t cnot_count = 0;
  std::size_t depth = 0;
  std::size_t gate_count = 0;
};

// Throws UndecomposedSwap when a SWAP is present.
Metrics metrics(const Circuit& c);

std::size_t count_kind(const Circuit& c, GateKind k);
std::size_t depth(const Circuit& c);

}  // namespace nassc::ir
