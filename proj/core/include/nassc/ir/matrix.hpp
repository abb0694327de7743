#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "nassc/ir/gate.hpp"

namespace nassc::ir {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using MatX = Eigen::MatrixXcd;

// 2x2 matrix of a one-qubit gate.
Mat2 gate_matrix_1q(const Gate& g);

// 4x4 matrix of a two-qubit gate on (qubits[0], qubits[1]); basis index is
// bit(qubits[0]) + 2*bit(qubits[1]).
Mat4 gate_matrix_2q(const Gate& g);

// A on the low qubit, B on the high qubit: returns B (x) A.
Mat4 kron_lo_hi(const Mat2& lo, const Mat2& hi);

// Matrix of g on the ordered support; support[i] is bit i of the index.
// Every qubit of g must appear in support.
MatX embed(const Gate& g, const std::vector<int>& support);

// Product of the gates (in circuit order) restricted to an ordered pair.
Mat4 pair_unitary(const std::vector<Gate>& gates, int a, int b);

// True when a and b agree up to a global phase, max-abs tolerance.
bool equal_up_to_phase(const MatX& a, const MatX& b, double tol);

bool is_unitary(const MatX& u, double tol = 1e-9);

}  // namespace nassc::ir
