#pragma once

#include "nassc/ir/circuit.hpp"
#include "nassc/ir/dag.hpp"
#include "nassc/ir/matrix.hpp"

namespace nassc::synthesis {

struct U3Angles {
  double theta = 0.0, phi = 0.0, lambda = 0.0;
  // m = e^{i phase} U3(theta, phi, lambda)
  double phase = 0.0;
};

U3Angles u3_from_matrix(const ir::Mat2& m);

bool is_identity_up_to_phase(const ir::Mat2& m, double tol = 1e-10);

// Maximal runs of one-qubit gates on a wire become a single U3, or vanish
// when the product is the identity. Runs of length one are kept as they are
// unless they are the identity.
ir::CircuitDag merge_1q_runs(const ir::CircuitDag& dag);
ir::Circuit merge_1q_runs(const ir::Circuit& c);

}  // namespace nassc::synthesis
