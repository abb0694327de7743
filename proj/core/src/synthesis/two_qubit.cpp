#include "nassc/synthesis/two_qubit.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "nassc/error.hpp"
#include "nassc/synthesis/one_qubit.hpp"

namespace nassc::synthesis {

using ir::cplx;
using ir::kron_lo_hi;

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

Mat2 pauli(int k) {
  Mat2 m;
  if (k == 0) m << 0, 1, 1, 0;
  else if (k == 1) m << 0, -kI, kI, 0;
  else m << 1, 0, 0, -1;
  return m;
}

Mat4 pauli_pair(int k) { return kron_lo_hi(pauli(k), pauli(k)); }

const Mat4& magic() {
  static const Mat4 b = [] {
    Mat4 m;
    const double s = 1.0 / std::sqrt(2.0);
    m << s, 0, 0, kI * s,
         0, kI * s, s, 0,
         0, kI * s, -s, 0,
         s, 0, 0, -kI * s;
    return m;
  }();
  return b;
}

// Rows: magic-basis diagonal entries; columns: x, y, z, phase.
const Eigen::Matrix4d& weyl_map() {
  static const Eigen::Matrix4d w = [] {
    Eigen::Matrix4d m;
    m << 1, -1, 1, 1,
         1, 1, -1, 1,
         -1, -1, -1, 1,
         -1, 1, 1, 1;
    return m;
  }();
  return w;
}

void require_unitary(const Mat4& u) {
  if (!ir::is_unitary(u, 1e-7)) throw NotUnitary("matrix is not unitary");
}

// u = e^{i phase} k1 Can(c) k2 with k1, k2 local 4x4 matrices.
struct RawKak {
  Mat4 k1, k2;
  std::array<double, 3> c{};
  double phase = 0.0;
};

RawKak raw_kak(const Mat4& u) {
  const Mat4& b = magic();
  const double ph = std::arg(u.determinant()) / 4.0;
  const Mat4 us = u * std::exp(-kI * ph);
  const Mat4 up = b.adjoint() * us * b;
  const Mat4 m2 = up.transpose() * up;
  const Eigen::Matrix4d re = m2.real(), im = m2.imag();

  Eigen::Matrix4d p;
  bool ok = false;
  for (int k = 0; k < 32 && !ok; ++k) {
    const double alpha = 0.5 + k * 0.7071067811865476;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(std::cos(alpha) * re + std::sin(alpha) * im);
    p = es.eigenvectors();
    const Mat4 d = p.transpose().cast<cplx>() * m2 * p.cast<cplx>();
    Mat4 off = d;
    off.diagonal().setZero();
    ok = off.cwiseAbs().maxCoeff() < 1e-9;
  }
  if (!ok) throw SynthesisResidual("kak: could not diagonalize M^T M");
  if (p.determinant() < 0) p.col(0) *= -1.0;

  const Mat4 d = p.transpose().cast<cplx>() * m2 * p.cast<cplx>();
  Eigen::Vector4d theta;
  for (int i = 0; i < 4; ++i) theta(i) = std::arg(d(i, i)) / 2.0;
  const long n = std::lround(theta.sum() / kPi);
  if (n % 2 != 0) theta(0) -= kPi;

  Eigen::Vector4cd inv_phase;
  for (int i = 0; i < 4; ++i) inv_phase(i) = std::exp(-kI * theta(i));
  const Mat4 q = up * p.cast<cplx>() * inv_phase.asDiagonal();

  RawKak r;
  r.k1 = b * q.real().cast<cplx>() * b.adjoint();
  r.k2 = b * p.transpose().cast<cplx>() * b.adjoint();
  const Eigen::Vector4d coords = weyl_map().transpose() * theta / 4.0;
  r.c = {coords(0), coords(1), coords(2)};
  r.phase = ph + coords(3);
  return r;
}

void swap_coords(RawKak& r, int i, int j) {
  Mat2 l;
  const double s = 1.0 / std::sqrt(2.0);
  if (i + j == 1) {
    l << 1, 0, 0, kI;  // S
  } else if (i + j == 2) {
    l << s, s, s, -s;  // H
  } else {
    l << s, -kI * s, -kI * s, s;  // Rx(pi/2)
  }
  const Mat4 ll = kron_lo_hi(l, l);
  r.k1 = r.k1 * ll.adjoint();
  r.k2 = ll * r.k2;
  std::swap(r.c[static_cast<std::size_t>(i)], r.c[static_cast<std::size_t>(j)]);
}

void flip_coords(RawKak& r, int i, int j) {
  const Mat4 l = kron_lo_hi(Mat2::Identity(), pauli(3 - i - j));
  r.k1 = r.k1 * l;
  r.k2 = l * r.k2;
  r.c[static_cast<std::size_t>(i)] = -r.c[static_cast<std::size_t>(i)];
  r.c[static_cast<std::size_t>(j)] = -r.c[static_cast<std::size_t>(j)];
}

void canonicalize(RawKak& r) {
  for (int i = 0; i < 3; ++i) {
    double& c = r.c[static_cast<std::size_t>(i)];
    const double n = std::floor((c + kPi / 4 - 1e-12) / (kPi / 2));
    if (n == 0.0) continue;
    c -= n * kPi / 2;
    if (std::fmod(std::abs(n), 2.0) == 1.0) r.k2 = pauli_pair(i) * r.k2;
    r.phase += n * kPi / 2;
  }
  auto mag = [&](int i) { return std::abs(r.c[static_cast<std::size_t>(i)]); };
  if (mag(0) < mag(1)) swap_coords(r, 0, 1);
  if (mag(1) < mag(2)) swap_coords(r, 1, 2);
  if (mag(0) < mag(1)) swap_coords(r, 0, 1);

  if (r.c[0] < 0 && r.c[1] < 0) flip_coords(r, 0, 1);
  else if (r.c[0] < 0) flip_coords(r, 0, 2);
  if (r.c[1] < 0) flip_coords(r, 1, 2);

  if (std::abs(r.c[0] - kPi / 4) < 1e-10 && r.c[2] < 0) {
    r.c[0] -= kPi / 2;
    r.k2 = pauli_pair(0) * r.k2;
    r.phase += kPi / 2;
    flip_coords(r, 0, 2);
  }
}

RawKak canonical_kak(const Mat4& u) {
  RawKak r = raw_kak(u);
  canonicalize(r);
  return r;
}

LocalFactors must_factor(const Mat4& k) {
  auto f = factor_local(k, 1e-7);
  if (!f) throw SynthesisResidual("kak: local factor is not a tensor product");
  return *f;
}

void push_1q(ir::Circuit& c, const Mat2& m, int q) {
  if (is_identity_up_to_phase(m, 1e-12)) return;
  const U3Angles a = u3_from_matrix(m);
  c.add(ir::u3(a.theta, a.phi, a.lambda, q));
}

// Circuits whose canonical class is the given one.
ir::Circuit template_circuit(int cnots, const std::array<double, 3>& c, int a, int b) {
  ir::Circuit t(std::max(a, b) + 1);
  switch (cnots) {
    case 0: break;
    case 1: t.add(ir::cx(a, b)); break;
    case 2:
      t.add(ir::cx(a, b));
      t.add(ir::u3(-2 * c[0], -kPi / 2, kPi / 2, a));  // Rx(-2x)
      t.add(ir::rz(-2 * c[1], b));
      t.add(ir::cx(a, b));
      break;
    default:
      t.add(ir::cx(b, a));
      t.add(ir::rz(kPi / 2 + 2 * c[2], a));
      t.add(ir::u3(kPi / 2 + 2 * c[0], 0, 0, b));  // Ry
      t.add(ir::cx(a, b));
      t.add(ir::u3(kPi / 2 + 2 * c[1], 0, 0, b));
      t.add(ir::cx(b, a));
      break;
  }
  return t;
}

}  // namespace

Mat4 canonical_gate(double x, double y, double z) {
  const double c[3] = {x, y, z};
  Mat4 m = Mat4::Identity();
  for (int k = 0; k < 3; ++k) {
    m = m * (std::cos(c[k]) * Mat4::Identity() + kI * std::sin(c[k]) * pauli_pair(k));
  }
  return m;
}

Mat4 KakDecomposition::reassemble() const {
  return std::exp(kI * global_phase) * kron_lo_hi(post_a, post_b) * canonical_gate(weyl[0], weyl[1], weyl[2]) *
         kron_lo_hi(pre_a, pre_b);
}

std::optional<LocalFactors> factor_local(const Mat4& u, double tol) {
  int br = 0, bc = 0;
  double best = -1.0;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      const double n = u.block(2 * r, 2 * c, 2, 2).norm();
      if (n > best) {
        best = n;
        br = r;
        bc = c;
      }
    }
  }
  const Mat2 blk = u.block(2 * br, 2 * bc, 2, 2);
  const cplx det = blk.determinant();
  if (std::abs(det) < 1e-12) return std::nullopt;
  const Mat2 lo = blk / std::sqrt(det);
  Mat2 hi;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) hi(r, c) = (lo.adjoint() * u.block(2 * r, 2 * c, 2, 2)).trace() / 2.0;
  }
  const cplx dh = hi.determinant();
  if (std::abs(dh) < 1e-12) return std::nullopt;
  const cplx root = std::sqrt(dh);
  hi /= root;
  LocalFactors f{lo, hi, std::arg(root)};
  const Mat4 back = std::exp(kI * f.phase) * kron_lo_hi(f.lo, f.hi);
  if ((back - u).cwiseAbs().maxCoeff() > tol) return std::nullopt;
  return f;
}

KakDecomposition kak_decompose(const Mat4& u) {
  require_unitary(u);
  const RawKak r = canonical_kak(u);
  const LocalFactors post = must_factor(r.k1), pre = must_factor(r.k2);
  KakDecomposition k;
  k.post_a = post.lo;
  k.post_b = post.hi;
  k.pre_a = pre.lo;
  k.pre_b = pre.hi;
  k.weyl = r.c;
  k.global_phase = r.phase + post.phase + pre.phase;
  return k;
}

int min_cnot_count(const Mat4& u) {
  require_unitary(u);
  const Mat4 us = u * std::exp(-kI * (std::arg(u.determinant()) / 4.0));
  const Mat4 yy = pauli_pair(1);
  const Mat4 g = us * yy * us.transpose() * yy;
  const Mat4 id = Mat4::Identity();
  constexpr double tol = 1e-8;
  if ((g - id).cwiseAbs().maxCoeff() < tol || (g + id).cwiseAbs().maxCoeff() < tol) return 0;
  const cplx t = g.trace();
  if (std::abs(t) < tol && (g * g + id).cwiseAbs().maxCoeff() < tol) return 1;
  if (std::abs(t.imag()) < tol) return 2;
  return 3;
}

ir::Circuit kak_synthesize(const Mat4& u, int a, int b) {
  require_unitary(u);
  ir::Circuit out(std::max(a, b) + 1);
  const Mat4 swap_m = ir::gate_matrix_2q(ir::swap(0, 1));
  if (ir::equal_up_to_phase(u, swap_m, 1e-12)) {
    out.add(ir::cx(a, b)).add(ir::cx(b, a)).add(ir::cx(a, b));
    return out;
  }
  const int k = min_cnot_count(u);
  if (k == 0) {
    const LocalFactors f = must_factor(u);
    push_1q(out, f.lo, a);
    push_1q(out, f.hi, b);
  } else {
    const RawKak ru = canonical_kak(u);
    const ir::Circuit t = template_circuit(k, ru.c, a, b);
    const RawKak rt = canonical_kak(ir::pair_unitary(t.gates, a, b));
    const LocalFactors pre = must_factor(rt.k2.adjoint() * ru.k2);
    const LocalFactors post = must_factor(ru.k1 * rt.k1.adjoint());
    push_1q(out, pre.lo, a);
    push_1q(out, pre.hi, b);
    for (const ir::Gate& g : t.gates) out.add(g);
    push_1q(out, post.lo, a);
    push_1q(out, post.hi, b);
  }
  const Mat4 back = ir::pair_unitary(out.gates, a, b);
  if (!ir::equal_up_to_phase(u, back, 1e-8)) {
    throw SynthesisResidual("kak_synthesize: reassembly mismatch " +
                            std::to_string((back - u).cwiseAbs().maxCoeff()));
  }
  return out;
}

}  // namespace nassc::synthesis
