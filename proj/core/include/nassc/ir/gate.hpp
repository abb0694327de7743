#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace nassc::ir {

enum class GateKind : std::uint8_t {
  ID, X, SX, RZ, H, Y, Z, U3, CX, CY, CZ, CRX, SWAP, MEASURE, BARRIER
};

struct Gate {
  GateKind kind = GateKind::ID;
  std::vector<int> qubits;
  std::vector<double> params;
  // Classical bit for MEASURE, -1 otherwise.
  int clbit = -1;
  // Index of the routing SWAP a gate was expanded from, -1 otherwise.
  // Only used for pass instrumentation; ignored by equality and QASM.
  int origin = -1;

  bool operator==(const Gate& o) const {
    return kind == o.kind && qubits == o.qubits && params == o.params &&
           clbit == o.clbit;
  }
};

std::string_view gate_name(GateKind k);
int param_count(GateKind k);

bool is_unitary(GateKind k);
bool is_single_qubit_unitary(const Gate& g);
bool is_two_qubit_unitary(const Gate& g);
// H, X, Y, Z, CX, CY, CZ.
bool is_self_inverse(GateKind k);
bool is_diagonal(const Gate& g, double tol = 1e-12);

// Throws InvalidCircuit if arity, params or distinctness are violated.
void validate(const Gate& g);

Gate make_1q(GateKind k, int q, std::vector<double> params = {});
Gate make_2q(GateKind k, int a, int b, std::vector<double> params = {});

inline Gate id(int q) { return make_1q(GateKind::ID, q); }
inline Gate x(int q) { return make_1q(GateKind::X, q); }
inline Gate sx(int q) { return make_1q(GateKind::SX, q); }
inline Gate h(int q) { return make_1q(GateKind::H, q); }
inline Gate y(int q) { return make_1q(GateKind::Y, q); }
inline Gate z(int q) { return make_1q(GateKind::Z, q); }
inline Gate rz(double theta, int q) { return make_1q(GateKind::RZ, q, {theta}); }
inline Gate u3(double theta, double phi, double lambda, int q) {
  return make_1q(GateKind::U3, q, {theta, phi, lambda});
}
inline Gate cx(int c, int t) { return make_2q(GateKind::CX, c, t); }
inline Gate cy(int c, int t) { return make_2q(GateKind::CY, c, t); }
inline Gate cz(int a, int b) { return make_2q(GateKind::CZ, a, b); }
inline Gate crx(double theta, int c, int t) {
  return make_2q(GateKind::CRX, c, t, {theta});
}
inline Gate swap(int a, int b) { return make_2q(GateKind::SWAP, a, b); }
Gate measure(int q, int c);
Gate barrier(std::vector<int> qubits);

std::string to_string(const Gate& g);

}  // namespace nassc::ir
