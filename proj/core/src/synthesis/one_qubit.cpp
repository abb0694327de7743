#include "nassc/synthesis/one_qubit.hpp"

#include <cmath>

namespace nassc::synthesis {

using ir::cplx;

U3Angles u3_from_matrix(const ir::Mat2& m) {
  const cplx coeff = 1.0 / std::sqrt(m.determinant());
  const ir::Mat2 s = coeff * m;
  U3Angles a;
  a.theta = 2.0 * std::atan2(std::abs(s(1, 0)), std::abs(s(0, 0)));
  const double sum_half = std::abs(s(1, 1)) > 1e-14 ? std::arg(s(1, 1)) : 0.0;
  const double diff_half = std::abs(s(1, 0)) > 1e-14 ? std::arg(s(1, 0)) : 0.0;
  a.phi = sum_half + diff_half;
  a.lambda = sum_half - diff_half;
  a.phase = -std::arg(coeff) - (a.phi + a.lambda) / 2.0;
  return a;
}

bool is_identity_up_to_phase(const ir::Mat2& m, double tol) {
  if (std::abs(m(0, 1)) > tol || std::abs(m(1, 0)) > tol) return false;
  if (std::abs(m(0, 0)) < 0.5) return false;
  const cplx ph = m(0, 0) / std::abs(m(0, 0));
  return std::abs(m(0, 0) - ph) < tol && std::abs(m(1, 1) - ph) < tol;
}

ir::CircuitDag merge_1q_runs(const ir::CircuitDag& in) {
  ir::CircuitDag dag = in;
  for (int w = 0; w < dag.num_qubits(); ++w) {
    std::vector<ir::NodeId> run;
    auto flush = [&] {
      if (run.empty()) return;
      ir::Mat2 m = ir::Mat2::Identity();
      for (ir::NodeId n : run) m = ir::gate_matrix_1q(dag.node(n).gate) * m;
      const bool ident = is_identity_up_to_phase(m);
      if (ident || run.size() > 1) {
        const ir::NodeId anchor = dag.prev_on(run.front(), w);
        for (ir::NodeId n : run) dag.remove(n);
        if (!ident) {
          const U3Angles a = u3_from_matrix(m);
          dag.insert_after(anchor, w, ir::u3(a.theta, a.phi, a.lambda, w));
        }
      }
      run.clear();
    };
    for (ir::NodeId n : dag.wire_nodes(w)) {
      if (ir::is_single_qubit_unitary(dag.node(n).gate)) {
        run.push_back(n);
      } else {
        flush();
      }
    }
    flush();
  }
  return dag;
}

ir::Circuit merge_1q_runs(const ir::Circuit& c) { return merge_1q_runs(ir::build_dag(c)).to_circuit(); }

}  // namespace nassc::synthesis
