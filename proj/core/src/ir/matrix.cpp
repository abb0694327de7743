#include "nassc/ir/matrix.hpp"

#include <cmath>

#include "nassc/error.hpp"

namespace nassc::ir {

namespace {

const cplx kI{0.0, 1.0};

Mat2 rx(double theta) {
  Mat2 m;
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  m << c, -kI * s, -kI * s, c;
  return m;
}

Mat2 pauli(GateKind k) {
  Mat2 m;
  switch (k) {
    case GateKind::X: m << 0, 1, 1, 0; break;
    case GateKind::Y: m << 0, -kI, kI, 0; break;
    case GateKind::Z: m << 1, 0, 0, -1; break;
    default: m.setIdentity();
  }
  return m;
}

// Controlled-v with the control on the low qubit.
Mat4 controlled(const Mat2& v) {
  Mat2 p0, p1;
  p0 << 1, 0, 0, 0;
  p1 << 0, 0, 0, 1;
  return kron_lo_hi(p0, Mat2::Identity()) + kron_lo_hi(p1, v);
}

void apply_1q_rows(MatX& m, const Mat2& g, int pos) {
  const Eigen::Index bit = Eigen::Index{1} << pos;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (i & bit) continue;
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const cplx a = m(i, c), b = m(i | bit, c);
      m(i, c) = g(0, 0) * a + g(0, 1) * b;
      m(i | bit, c) = g(1, 0) * a + g(1, 1) * b;
    }
  }
}

void apply_2q_rows(MatX& m, const Mat4& g, int p0, int p1) {
  const Eigen::Index b0 = Eigen::Index{1} << p0, b1 = Eigen::Index{1} << p1;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if ((i & b0) || (i & b1)) continue;
    const Eigen::Index idx[4] = {i, i | b0, i | b1, i | b0 | b1};
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      cplx v[4];
      for (int k = 0; k < 4; ++k) v[k] = m(idx[k], c);
      for (int r = 0; r < 4; ++r) {
        m(idx[r], c) = g(r, 0) * v[0] + g(r, 1) * v[1] + g(r, 2) * v[2] + g(r, 3) * v[3];
      }
    }
  }
}

int position(const std::vector<int>& support, int q) {
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (support[i] == q) return static_cast<int>(i);
  }
  throw InvalidCircuit("qubit " + std::to_string(q) + " outside support");
}

}  // namespace

Mat4 kron_lo_hi(const Mat2& lo, const Mat2& hi) {
  Mat4 m;
  for (int r1 = 0; r1 < 2; ++r1)
    for (int c1 = 0; c1 < 2; ++c1)
      for (int r0 = 0; r0 < 2; ++r0)
        for (int c0 = 0; c0 < 2; ++c0) m(r0 + 2 * r1, c0 + 2 * c1) = hi(r1, c1) * lo(r0, c0);
  return m;
}

Mat2 gate_matrix_1q(const Gate& g) {
  Mat2 m;
  switch (g.kind) {
    case GateKind::ID: return Mat2::Identity();
    case GateKind::X:
    case GateKind::Y:
    case GateKind::Z: return pauli(g.kind);
    case GateKind::SX:
      m << cplx(0.5, 0.5), cplx(0.5, -0.5), cplx(0.5, -0.5), cplx(0.5, 0.5);
      return m;
    case GateKind::H: {
      const double s = 1.0 / std::sqrt(2.0);
      m << s, s, s, -s;
      return m;
    }
    case GateKind::RZ: {
      const double t = g.params[0];
      m << std::exp(-kI * (t / 2)), 0, 0, std::exp(kI * (t / 2));
      return m;
    }
    case GateKind::U3: {
      const double th = g.params[0], ph = g.params[1], la = g.params[2];
      const double c = std::cos(th / 2), s = std::sin(th / 2);
      m << c, -std::exp(kI * la) * s, std::exp(kI * ph) * s, std::exp(kI * (ph + la)) * c;
      return m;
    }
    default:
      throw InvalidCircuit(std::string(gate_name(g.kind)) + " is not a one-qubit unitary");
  }
}

Mat4 gate_matrix_2q(const Gate& g) {
  switch (g.kind) {
    case GateKind::CX:
    case GateKind::CY:
    case GateKind::CZ: {
      const GateKind p = g.kind == GateKind::CX   ? GateKind::X
                         : g.kind == GateKind::CY ? GateKind::Y
                                                  : GateKind::Z;
      return controlled(pauli(p));
    }
    case GateKind::CRX: return controlled(rx(g.params[0]));
    case GateKind::SWAP: {
      Mat4 m = Mat4::Zero();
      m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1;
      return m;
    }
    default:
      throw InvalidCircuit(std::string(gate_name(g.kind)) + " is not a two-qubit unitary");
  }
}

MatX embed(const Gate& g, const std::vector<int>& support) {
  const Eigen::Index dim = Eigen::Index{1} << support.size();
  MatX m = MatX::Identity(dim, dim);
  if (g.qubits.size() == 1) {
    apply_1q_rows(m, gate_matrix_1q(g), position(support, g.qubits[0]));
  } else if (g.qubits.size() == 2) {
    apply_2q_rows(m, gate_matrix_2q(g), position(support, g.qubits[0]),
                  position(support, g.qubits[1]));
  } else {
    throw InvalidCircuit("cannot embed " + std::string(gate_name(g.kind)));
  }
  return m;
}

Mat4 pair_unitary(const std::vector<Gate>& gates, int a, int b) {
  const std::vector<int> support{a, b};
  MatX u = MatX::Identity(4, 4);
  for (const Gate& g : gates) {
    if (g.qubits.size() == 1) {
      apply_1q_rows(u, gate_matrix_1q(g), position(support, g.qubits[0]));
    } else {
      apply_2q_rows(u, gate_matrix_2q(g), position(support, g.qubits[0]),
                    position(support, g.qubits[1]));
    }
  }
  return u;
}

bool equal_up_to_phase(const MatX& a, const MatX& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  Eigen::Index r = 0, c = 0;
  a.cwiseAbs().maxCoeff(&r, &c);
  if (std::abs(a(r, c)) < tol) return b.cwiseAbs().maxCoeff() < tol;
  if (std::abs(b(r, c)) < tol) return false;
  const cplx ph = b(r, c) / a(r, c);
  const cplx unit = ph / std::abs(ph);
  return (a * unit - b).cwiseAbs().maxCoeff() < tol;
}

bool is_unitary(const MatX& u, double tol) {
  if (u.rows() != u.cols()) return false;
  return (u * u.adjoint() - MatX::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() < tol;
}

}  // namespace nassc::ir
