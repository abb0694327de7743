#pragma once

#include <cstdint>
#include <vector>

#include "nassc/ir/circuit.hpp"
#include "nassc/ir/matrix.hpp"

namespace nassc::ir {

inline constexpr int kMaxSimQubits = 14;

// Little endian: qubit 0 is the least significant bit of the index.
class Statevector {
 public:
  explicit Statevector(int num_qubits);  // |0...0>
  Statevector(int num_qubits, std::vector<cplx> amps);

  static Statevector basis(int num_qubits, std::uint64_t index);
  // Tensor product of one-qubit states; states[i] lives on qubit i.
  static Statevector product(const std::vector<Eigen::Vector2cd>& states);

  int num_qubits() const { return n_; }
  const std::vector<cplx>& amplitudes() const { return amps_; }
  std::vector<cplx>& amplitudes() { return amps_; }
  cplx operator[](std::size_t i) const { return amps_[i]; }
  double norm() const;

  void apply(const Gate& g);
  void apply_1q(const Mat2& m, int q);
  void apply_2q(const Mat4& m, int q0, int q1);

 private:
  int n_;
  std::vector<cplx> amps_;
};

// Applies every gate of c to `initial`. Limits: num_qubits <= kMaxSimQubits
// unless `max_qubits` is raised; MEASURE is rejected.
Statevector simulate(const Circuit& c, const Statevector& initial,
                     int max_qubits = kMaxSimQubits);
Statevector simulate(const Circuit& c);

}  // namespace nassc::ir
