#include "nassc/ir/statevector.hpp"

#include <cmath>

#include "nassc/error.hpp"

namespace nassc::ir {

Statevector::Statevector(int num_qubits) : n_(num_qubits) {
  amps_.assign(std::size_t{1} << num_qubits, cplx{0.0, 0.0});
  amps_[0] = 1.0;
}

Statevector::Statevector(int num_qubits, std::vector<cplx> amps)
    : n_(num_qubits), amps_(std::move(amps)) {
  if (amps_.size() != (std::size_t{1} << num_qubits)) {
    throw InvalidCircuit("statevector size does not match qubit count");
  }
}

Statevector Statevector::basis(int num_qubits, std::uint64_t index) {
  Statevector s(num_qubits);
  s.amps_[0] = 0.0;
  s.amps_.at(index) = 1.0;
  return s;
}

Statevector Statevector::product(const std::vector<Eigen::Vector2cd>& states) {
  const int n = static_cast<int>(states.size());
  std::vector<cplx> amps(std::size_t{1} << n, cplx{1.0, 0.0});
  for (std::size_t i = 0; i < amps.size(); ++i) {
    for (int q = 0; q < n; ++q) amps[i] *= states[static_cast<std::size_t>(q)]((i >> q) & 1U);
  }
  return Statevector(n, std::move(amps));
}

double Statevector::norm() const {
  double s = 0.0;
  for (const cplx& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

void Statevector::apply_1q(const Mat2& m, int q) {
  const std::size_t bit = std::size_t{1} << q;
  const cplx m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & bit) continue;
    const cplx a = amps_[i], b = amps_[i | bit];
    amps_[i] = m00 * a + m01 * b;
    amps_[i | bit] = m10 * a + m11 * b;
  }
}

void Statevector::apply_2q(const Mat4& m, int q0, int q1) {
  const std::size_t b0 = std::size_t{1} << q0, b1 = std::size_t{1} << q1;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if ((i & b0) || (i & b1)) continue;
    const std::size_t idx[4] = {i, i | b0, i | b1, i | b0 | b1};
    const cplx v[4] = {amps_[idx[0]], amps_[idx[1]], amps_[idx[2]], amps_[idx[3]]};
    for (int r = 0; r < 4; ++r) {
      amps_[idx[r]] = m(r, 0) * v[0] + m(r, 1) * v[1] + m(r, 2) * v[2] + m(r, 3) * v[3];
    }
  }
}

void Statevector::apply(const Gate& g) {
  switch (g.kind) {
    case GateKind::BARRIER:
    case GateKind::ID: return;
    case GateKind::MEASURE: throw MeasurementUnsupported("simulate: circuit contains measure");
    case GateKind::SWAP: {
      const std::size_t b0 = std::size_t{1} << g.qubits[0], b1 = std::size_t{1} << g.qubits[1];
      for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i & b0) && !(i & b1)) std::swap(amps_[i], amps_[(i ^ b0) | b1]);
      }
      return;
    }
    case GateKind::CX: {
      const std::size_t c = std::size_t{1} << g.qubits[0], t = std::size_t{1} << g.qubits[1];
      for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i & c) && !(i & t)) std::swap(amps_[i], amps_[i | t]);
      }
      return;
    }
    default: break;
  }
  if (g.qubits.size() == 1) {
    apply_1q(gate_matrix_1q(g), g.qubits[0]);
  } else {
    apply_2q(gate_matrix_2q(g), g.qubits[0], g.qubits[1]);
  }
}

Statevector simulate(const Circuit& c, const Statevector& initial, int max_qubits) {
  if (c.num_qubits > max_qubits) {
    throw TooManyQubits("simulate: " + std::to_string(c.num_qubits) + " qubits exceeds limit of " +
                        std::to_string(max_qubits));
  }
  if (initial.num_qubits() != c.num_qubits) throw InvalidCircuit("simulate: state size mismatch");
  for (const Gate& g : c.gates) {
    if (g.kind == GateKind::MEASURE) throw MeasurementUnsupported("simulate: circuit contains measure");
  }
  Statevector s = initial;
  for (const Gate& g : c.gates) s.apply(g);
  return s;
}

Statevector simulate(const Circuit& c) { return simulate(c, Statevector(c.num_qubits)); }

}  // namespace nassc::ir
