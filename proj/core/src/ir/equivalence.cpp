#include "nassc/ir/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "nassc/error.hpp"
#include "nassc/ir/statevector.hpp"

namespace nassc::ir {

namespace {

Circuit relabel(const Circuit& c, const std::vector<int>& to, int n) {
  Circuit r(n, c.num_clbits);
  r.gates.reserve(c.gates.size());
  for (Gate g : c.gates) {
    for (int& q : g.qubits) q = to[static_cast<std::size_t>(q)];
    r.gates.push_back(std::move(g));
  }
  return r;
}

Circuit unitary_part(const Circuit& c) {
  Circuit r(c.num_qubits, c.num_clbits);
  for (const Gate& g : c.gates) {
    if (g.kind == GateKind::MEASURE) throw MeasurementUnsupported("equivalence: circuit contains measure");
    if (g.kind != GateKind::BARRIER) r.gates.push_back(g);
  }
  return r;
}

Eigen::Vector2cd haar_qubit(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::Vector2cd v(cplx(n(rng), n(rng)), cplx(n(rng), n(rng)));
  return v / v.norm();
}

}  // namespace

bool equivalent_up_to_permutation(const Circuit& a, const Circuit& b, const std::vector<int>& final_map,
                                  const std::vector<int>& initial, const EquivalenceOptions& opts) {
  const int n = a.num_qubits;
  std::vector<int> init = initial;
  if (init.empty()) {
    init.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) init[static_cast<std::size_t>(i)] = i;
  }
  if (static_cast<int>(init.size()) < n || static_cast<int>(final_map.size()) < n) {
    throw InvalidCircuit("equivalence: layout shorter than the logical register");
  }
  if (n > kMaxSimQubits) throw TooManyQubits("equivalence: logical circuit exceeds 14 qubits");

  // Compact the physical register to the qubits that matter.
  std::set<int> used;
  for (const Gate& g : b.gates) used.insert(g.qubits.begin(), g.qubits.end());
  for (int l = 0; l < n; ++l) {
    used.insert(init[static_cast<std::size_t>(l)]);
    used.insert(final_map[static_cast<std::size_t>(l)]);
  }
  for (int p : used) {
    if (p < 0 || p >= b.num_qubits) throw InvalidCircuit("equivalence: layout entry out of range");
  }
  const int m = static_cast<int>(used.size());
  if (m > opts.max_qubits) {
    throw TooManyQubits("equivalence: routed circuit touches " + std::to_string(m) + " qubits");
  }
  std::vector<int> compact(static_cast<std::size_t>(b.num_qubits), -1);
  int k = 0;
  for (int p : used) compact[static_cast<std::size_t>(p)] = k++;

  const Circuit ca = unitary_part(a);
  const Circuit cb = relabel(unitary_part(b), compact, m);

  std::mt19937_64 rng(opts.seed);
  cplx phase{0.0, 0.0};
  for (int trial = 0; trial <= opts.random_inputs; ++trial) {
    std::vector<Eigen::Vector2cd> logical(static_cast<std::size_t>(n), Eigen::Vector2cd(1, 0));
    if (trial > 0) {
      for (auto& s : logical) s = haar_qubit(rng);
    }
    std::vector<Eigen::Vector2cd> phys(static_cast<std::size_t>(m), Eigen::Vector2cd(1, 0));
    for (int l = 0; l < n; ++l) {
      phys[static_cast<std::size_t>(compact[static_cast<std::size_t>(init[static_cast<std::size_t>(l)])])] =
          logical[static_cast<std::size_t>(l)];
    }
    const Statevector out_a = simulate(ca, Statevector::product(logical));
    const Statevector out_b = simulate(cb, Statevector::product(phys), opts.max_qubits);

    // Expected physical state: a's output with logical bit l placed on final_map[l].
    std::vector<cplx> expected(std::size_t{1} << m, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < out_a.amplitudes().size(); ++i) {
      std::size_t j = 0;
      for (int l = 0; l < n; ++l) {
        if ((i >> l) & 1U) {
          j |= std::size_t{1} << compact[static_cast<std::size_t>(final_map[static_cast<std::size_t>(l)])];
        }
      }
      expected[j] = out_a[i];
    }
    if (trial == 0) {
      // One global phase for every input, taken from the overlap on |0...0>.
      cplx overlap{0.0, 0.0};
      for (std::size_t i = 0; i < expected.size(); ++i) overlap += std::conj(expected[i]) * out_b[i];
      if (std::abs(overlap) < 0.5) return false;
      phase = overlap / std::abs(overlap);
    }
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (std::abs(expected[i] * phase - out_b[i]) > opts.tol) return false;
    }
  }
  return true;
}

}  // namespace nassc::ir
