#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "nassc/ir/circuit.hpp"
#include "nassc/ir/matrix.hpp"

namespace nassc::testing {

inline std::string fixture(const std::string& name) { return std::string(NASSC_FIXTURE_DIR) + "/" + name; }

// Full 2^n unitary built by explicit index arithmetic, independent of the
// statevector kernels.
inline ir::MatX dense_unitary(const ir::Circuit& c) {
  const std::size_t dim = std::size_t{1} << c.num_qubits;
  ir::MatX u = ir::MatX::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (const ir::Gate& g : c.gates) {
    if (g.kind == ir::GateKind::BARRIER || g.kind == ir::GateKind::ID) continue;
    ir::MatX step = ir::MatX::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    if (g.qubits.size() == 1) {
      const ir::Mat2 m = ir::gate_matrix_1q(g);
      const std::size_t bit = std::size_t{1} << g.qubits[0];
      for (std::size_t col = 0; col < dim; ++col) {
        const int in = (col & bit) ? 1 : 0;
        for (int out = 0; out < 2; ++out) {
          const std::size_t row = out ? (col | bit) : (col & ~bit);
          step(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) += m(out, in);
        }
      }
    } else {
      const ir::Mat4 m = ir::gate_matrix_2q(g);
      const std::size_t b0 = std::size_t{1} << g.qubits[0], b1 = std::size_t{1} << g.qubits[1];
      for (std::size_t col = 0; col < dim; ++col) {
        const int in = ((col & b0) ? 1 : 0) + ((col & b1) ? 2 : 0);
        for (int out = 0; out < 4; ++out) {
          std::size_t row = col & ~b0 & ~b1;
          if (out & 1) row |= b0;
          if (out & 2) row |= b1;
          step(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) += m(out, in);
        }
      }
    }
    u = step * u;
  }
  return u;
}

// Haar-random unitary via QR of a complex Ginibre matrix.
inline ir::MatX haar_unitary(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  ir::MatX z(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) z(i, j) = ir::cplx(n(rng), n(rng));
  }
  Eigen::HouseholderQR<ir::MatX> qr(z);
  ir::MatX q = qr.householderQ();
  ir::MatX r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < dim; ++i) {
    const ir::cplx d = r(i, i);
    q.col(i) *= d / std::abs(d);
  }
  return q;
}

inline ir::Mat4 haar_su4(std::mt19937_64& rng) {
  ir::Mat4 u = haar_unitary(4, rng);
  const ir::cplx det = u.determinant();
  return u / std::pow(det, 0.25);
}

inline ir::Mat2 haar_u2(std::mt19937_64& rng) { return haar_unitary(2, rng); }

}  // namespace nassc::testing
