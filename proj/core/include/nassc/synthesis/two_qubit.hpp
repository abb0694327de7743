#pragma once

#include <array>
#include <optional>
#include <utility>

#include "nassc/ir/circuit.hpp"
#include "nassc/ir/matrix.hpp"

namespace nassc::synthesis {

using ir::Mat2;
using ir::Mat4;

// u = e^{i global_phase} (post_a (x) post_b) Can(x,y,z) (pre_a (x) pre_b),
// with *_a on the low qubit and Can = exp(i(x XX + y YY + z ZZ)).
// Weyl coordinates satisfy pi/4 >= x >= y >= |z|.
struct KakDecomposition {
  Mat2 pre_a, pre_b, post_a, post_b;
  std::array<double, 3> weyl{};
  double global_phase = 0.0;

  Mat4 reassemble() const;
};

Mat4 canonical_gate(double x, double y, double z);

// Throws NotUnitary.
KakDecomposition kak_decompose(const Mat4& u);

// Minimal CX count from the invariants of gamma(U) = U (YY) U^T (YY).
int min_cnot_count(const Mat4& u);

// Splits u = e^{i phase} (a (x) b) when u is a tensor product.
struct LocalFactors {
  Mat2 lo, hi;
  double phase;
};
std::optional<LocalFactors> factor_local(const Mat4& u, double tol = 1e-8);

// Circuit on qubits {a, b} (num_qubits = max(a,b)+1) with exactly
// min_cnot_count(u) CX gates. Throws NotUnitary, SynthesisResidual.
ir::Circuit kak_synthesize(const Mat4& u, int a, int b);

}  // namespace nassc::synthesis
